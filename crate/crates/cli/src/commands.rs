use std::fs;
use std::io::Write;
use std::path::Path;

use serde_json::{json, Value};

use dnacc::bounds::{
    ball_size_b, construction_size, f_value, singleton_bound, sphere_packing_bound, BoundReport, BoundValue,
    DEFAULT_PERMANENT_CAP,
};
use dnacc::channel::{
    enumerate_outputs, is_dcc_brute, is_dcc_by_distance, plurality_decode, sample_output, ChannelParams,
    DistanceVerdict, SampleMode, Tau, DEFAULT_ENUM_CAP,
};
use dnacc::indexcodes::{
    construct_coset, construct_extend, search_exact_f, search_greedy, validate_code, CodeParams, IndexCode,
    LinearInnerCode, SearchBudget,
};
use dnacc::io::{
    codebook_from_json, matrix_from_text, matrix_to_text, message_from_json, message_to_json, pool_to_json,
    MatrixHeader,
};
use dnacc::message::{exact_log2, Message};
use dnacc::metric::{ball, dna_distance_detail, DEFAULT_BALL_CAP};
use dnacc::Error;

use crate::{ChannelArgs, Method, TableFormat, TextFormat, VerifyMode};

pub const EXIT_PARSE: u8 = 2;
pub const EXIT_PARAMS: u8 = 3;
pub const EXIT_DISCREPANCY: u8 = 4;
pub const EXIT_BUDGET: u8 = 5;
pub const EXIT_PRECONDITION: u8 = 6;

pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::BadBitString(_) => EXIT_PARSE,
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::UnsupportedEd(_) | Error::AmbiguousMajority(_) | Error::Precondition(_) => EXIT_PRECONDITION,
            _ => EXIT_PARAMS,
        };
        Self::new(code, e.to_string())
    }
}

/// Caps for enumeration and search; `DNACC_BUDGET=N` sets all of them to N.
pub struct Budget {
    pub enumeration: u128,
    pub ball: u128,
    pub search: SearchBudget,
}

impl Budget {
    pub fn from_env() -> Result<Self, CliError> {
        let mut b = Self { enumeration: DEFAULT_ENUM_CAP, ball: DEFAULT_BALL_CAP, search: SearchBudget::default() };
        if let Ok(v) = std::env::var("DNACC_BUDGET") {
            let n: u64 = v
                .trim()
                .parse()
                .map_err(|_| CliError::new(EXIT_PARSE, format!("DNACC_BUDGET={v:?} is not an integer")))?;
            b.enumeration = n as u128;
            b.ball = n as u128;
            b.search = SearchBudget { max_vertices: n as u128, max_nodes: n, max_rows: n as u128 };
        }
        Ok(b)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::new(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| CliError::new(EXIT_PARAMS, format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| CliError::new(EXIT_PARAMS, e.to_string()))
        }
    }
}

fn line(v: &Value) -> String {
    format!("{}\n", serde_json::to_string(v).expect("json value serializes"))
}

fn channel_params(c: &ChannelArgs) -> Result<ChannelParams, CliError> {
    let tau: Tau = c.tau.parse()?;
    Ok(ChannelParams::new(tau, c.e_i, c.e_d, c.k)?)
}

fn load_message(path: &Path) -> Result<Message, CliError> {
    Ok(message_from_json(&read(path)?)?)
}

pub fn distance(a: &Path, b: &Path, format: TextFormat) -> Result<(), CliError> {
    let (z1, z2) = (load_message(a)?, load_message(b)?);
    let detail = dna_distance_detail(&z1, &z2)?;
    let text = match format {
        TextFormat::Text => {
            let mut s = format!("{}\n", detail.distance);
            for (u, m) in &detail.per_data {
                let pairs: Vec<String> = m.pairs.iter().map(|(x, y)| format!("{x}->{y}")).collect();
                s += &format!("{u} {} {}\n", m.weight, pairs.join(","));
            }
            s
        }
        TextFormat::Json => {
            let per: Vec<Value> = detail
                .per_data
                .iter()
                .map(|(u, m)| {
                    let pairs: Vec<Value> = m.pairs.iter().map(|(x, y)| json!([x.to_string(), y.to_string()])).collect();
                    json!({"data": u.to_string(), "weight": m.weight, "pairs": pairs})
                })
                .collect();
            line(&json!({"distance": detail.distance, "per_data": per}))
        }
    };
    emit(None, &text)
}

fn verdict_name(v: DistanceVerdict) -> &'static str {
    match v {
        DistanceVerdict::GuaranteedYes => "GuaranteedYes",
        DistanceVerdict::GuaranteedNo => "GuaranteedNo",
        DistanceVerdict::Inconclusive => "Inconclusive",
    }
}

pub fn verify_dcc(path: &Path, c: &ChannelArgs, mode: VerifyMode, budget: &Budget) -> Result<(), CliError> {
    let ch = channel_params(c)?;
    let (_, code) = codebook_from_json(&read(path)?)?;
    let mut report = serde_json::Map::new();
    report.insert("codewords".into(), code.len().into());
    report.insert("regime".into(), serde_json::to_value(ch.regime()).expect("regime serializes"));
    let brute = match mode {
        VerifyMode::Brute | VerifyMode::Both => {
            let v = is_dcc_brute(&code, &ch, budget.enumeration)?;
            let witness = v.witness.as_ref().map(|(i, j, pool)| {
                json!({"codewords": [i, j], "pool": serde_json::from_str::<Value>(&pool_to_json(pool)).unwrap()})
            });
            report.insert("brute".into(), json!({"is_dcc": v.is_dcc, "witness": witness}));
            Some(v.is_dcc)
        }
        VerifyMode::Distance => None,
    };
    let distance = match mode {
        VerifyMode::Distance | VerifyMode::Both => {
            let v = is_dcc_by_distance(&code, &ch)?;
            report.insert("distance".into(), verdict_name(v).into());
            Some(v)
        }
        VerifyMode::Brute => None,
    };
    let mut discrepancy = false;
    if let (Some(b), Some(d)) = (brute, distance) {
        discrepancy = matches!(
            (b, d),
            (false, DistanceVerdict::GuaranteedYes) | (true, DistanceVerdict::GuaranteedNo)
        );
        report.insert("agree".into(), (!discrepancy).into());
    }
    emit(None, &line(&Value::Object(report)))?;
    if discrepancy {
        return Err(CliError::new(EXIT_DISCREPANCY, "brute-force verdict contradicts the distance verdict"));
    }
    Ok(())
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::new(EXIT_PARAMS, format!("{flag} is required for this method")))
}

#[allow(clippy::too_many_arguments)]
pub fn construct(
    method: Method,
    l: Option<usize>,
    m: Option<usize>,
    d: Option<u32>,
    input: Option<&Path>,
    seed: Option<u64>,
    output: Option<&Path>,
    budget: &Budget,
) -> Result<(), CliError> {
    let code = match method {
        Method::Coset => {
            let (m, d) = (need(m, "--M")?, need(d, "--d")?);
            let inner = LinearInnerCode::for_distance(exact_log2(m)?, d)?;
            let c = construct_coset(m, d, &inner, budget.enumeration)?;
            eprintln!(
                "coset construction: {} base rows, {} of {} augmented rows kept, formula {}",
                c.base_rows, c.augmented_accepted, c.augmented_attempted, c.formula_total
            );
            for row in &c.dropped {
                eprintln!(
                    "dropped: coset {} word {} row {} (distance {} to row {})",
                    row.coset,
                    row.swapped_word,
                    row.row.join(" "),
                    row.distance,
                    row.conflicts_with
                );
            }
            c.code
        }
        Method::Extend => {
            let path = need(input, "--input")?;
            let (header, rows) = matrix_from_text(&read(path)?)?;
            let d = need(d.or(header.d), "--d (or a d= header)")?;
            let first = rows.first().ok_or_else(|| CliError::new(EXIT_PARAMS, "input matrix is empty"))?;
            let params = CodeParams { index_len: first.index_len(), m: first.m(), d };
            construct_extend(&IndexCode::new(params, rows)?)?
        }
        Method::SearchExact => {
            let (m, d) = (need(m, "--M")?, need(d, "--d")?);
            let l = match l {
                Some(l) => l,
                None => exact_log2(m)?,
            };
            search_exact_f(l, m, d, budget.search)?.code
        }
        Method::SearchGreedy => {
            let (m, d, seed) = (need(m, "--M")?, need(d, "--d")?, need(seed, "--seed")?);
            let l = match l {
                Some(l) => l,
                None => exact_log2(m)?,
            };
            search_greedy(l, m, d, seed, budget.search)?
        }
    };
    let p = code.params();
    let check = validate_code(code.rows(), p.d);
    if let Some(v) = check.violation {
        return Err(CliError::new(EXIT_DISCREPANCY, format!("constructed code failed validation: {v}")));
    }
    let header = MatrixHeader { l: Some(p.index_len), m: Some(p.m), d: Some(p.d) };
    emit(output, &matrix_to_text(code.rows(), &header))
}

pub fn validate(path: &Path, d: Option<u32>) -> Result<(), CliError> {
    let (header, rows) = matrix_from_text(&read(path)?)?;
    let d = need(d.or(header.d), "--d (or a d= header)")?;
    let check = validate_code(&rows, d);
    let violation = check.violation.as_ref().map(|v| v.to_string());
    emit(None, &line(&json!({"rows": rows.len(), "d": d, "valid": check.valid, "violation": violation})))?;
    if check.valid {
        Ok(())
    } else {
        Err(CliError::new(EXIT_PARAMS, violation.unwrap_or_default()))
    }
}

fn bound_reports(l: usize, m: usize, d: u32, budget: &Budget) -> Result<Vec<BoundReport>, CliError> {
    let mut out = Vec::new();
    let log_m = exact_log2(m).ok();
    if log_m == Some(l) {
        if let Ok(r) = singleton_bound(m, d) {
            out.push(r);
        }
        out.push(sphere_packing_bound(m, d)?);
        if let Ok(r) = construction_size(m, d) {
            out.push(r);
        }
    }
    let f = f_value(l, m, d, budget.search)?;
    let mut inputs = std::collections::BTreeMap::new();
    inputs.insert("l".to_string(), Value::from(l));
    inputs.insert("M".to_string(), Value::from(m));
    inputs.insert("d".to_string(), Value::from(d));
    out.push(BoundReport { name: "exact_f".into(), inputs, value: f, extra: Default::default() });
    Ok(out)
}

fn csv_cell(reports: &[BoundReport], name: &str) -> String {
    match reports.iter().find(|r| r.name == name).map(|r| &r.value) {
        None => String::new(),
        Some(BoundValue::Bracket { lower, upper }) => format!("{lower}..{upper}"),
        Some(v) => v.floor().to_string(),
    }
}

pub fn bounds(
    l: Option<usize>,
    m: usize,
    d: u32,
    sweep: bool,
    format: TableFormat,
    budget: &Budget,
) -> Result<(), CliError> {
    let mut cases = Vec::new();
    if sweep {
        let top = exact_log2(m)?;
        for lm in 2..=top {
            for dd in 1..=d {
                cases.push((lm, 1usize << lm, dd));
            }
        }
    } else {
        let l = match l {
            Some(l) => l,
            None => exact_log2(m)?,
        };
        cases.push((l, m, d));
    }
    let mut all = Vec::new();
    for &(l, m, d) in &cases {
        all.push(((l, m, d), bound_reports(l, m, d, budget)?));
    }
    let text = match format {
        TableFormat::Json => {
            let flat: Vec<&BoundReport> = all.iter().flat_map(|(_, r)| r).collect();
            format!("{}\n", serde_json::to_string(&flat).expect("reports serialize"))
        }
        TableFormat::Csv => {
            let mut s = String::from("l,M,d,singleton,sphere_packing,construction,exact_f\n");
            for ((l, m, d), r) in &all {
                s += &format!(
                    "{l},{m},{d},{},{},{},{}\n",
                    csv_cell(r, "singleton"),
                    csv_cell(r, "sphere_packing"),
                    csv_cell(r, "construction"),
                    csv_cell(r, "exact_f")
                );
            }
            s
        }
    };
    emit(None, &text)
}

pub fn ball_size(r: u32, m: Option<usize>, message: Option<&Path>, budget: &Budget) -> Result<(), CliError> {
    match (m, message) {
        (Some(m), None) => {
            let b = ball_size_b(r, m, DEFAULT_PERMANENT_CAP)?;
            emit(None, &line(&json!({"r": r, "M": m, "ball_size": b.to_string()})))
        }
        (None, Some(path)) => {
            let z = load_message(path)?;
            let members = ball(&z, r, budget.ball)?;
            emit(None, &line(&json!({"r": r, "ball_size": members.len()})))
        }
        _ => Err(CliError::new(EXIT_PARAMS, "give exactly one of --M and --message")),
    }
}

pub fn simulate(
    path: &Path,
    c: &ChannelArgs,
    seed: u64,
    worst_case: bool,
    decode: bool,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let ch = channel_params(c)?;
    let z = load_message(path)?;
    let mode = if worst_case { SampleMode::WorstCase } else { SampleMode::Uniform };
    // check decode preconditions before producing any output
    if decode && !z.is_distinct_data() {
        return Err(CliError::new(EXIT_PRECONDITION, "plurality decoding needs distinct data-fields"));
    }
    let pool = sample_output(&z, &ch, seed, mode);
    let decoded = if decode { Some(plurality_decode(&pool, z.params(), &ch)?) } else { None };
    let pool_json = pool_to_json(&pool);
    match (output, decoded) {
        (Some(p), decoded) => {
            emit(Some(p), &format!("{pool_json}\n"))?;
            if let Some(y) = decoded {
                let y_json: Value = serde_json::from_str(&message_to_json(&y)).unwrap();
                emit(None, &line(&json!({"decoded": y_json, "match": y == z})))?;
            }
            Ok(())
        }
        (None, Some(y)) => {
            let y_json: Value = serde_json::from_str(&message_to_json(&y)).unwrap();
            let pool_val: Value = serde_json::from_str(&pool_json).unwrap();
            emit(None, &line(&json!({"pool": pool_val, "decoded": y_json, "match": y == z})))
        }
        (None, None) => emit(None, &format!("{pool_json}\n")),
    }
}

pub fn enumerate(path: &Path, c: &ChannelArgs, list: bool, budget: &Budget) -> Result<(), CliError> {
    let ch = channel_params(c)?;
    let z = load_message(path)?;
    let pools = enumerate_outputs(&z, &ch, budget.enumeration)?;
    let mut report = json!({"count": pools.len()});
    if list {
        let items: Vec<Value> = pools.iter().map(|p| serde_json::from_str(&pool_to_json(p)).unwrap()).collect();
        report["pools"] = Value::Array(items);
    }
    emit(None, &line(&report))
}
