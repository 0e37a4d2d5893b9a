use std::collections::BTreeMap;
use std::fmt::Write as _;

use mixshuffle_core::ring::RingSpec;
use mixshuffle_core::rota_baxter::{check_rb_identity, RbAlgebra, RbElement};
use mixshuffle_core::semigroup::OrderedSemigroup;
use mixshuffle_core::shuffle::{eettl_representative, shuffle_words, ShuffleAlgebra, TensorPoly};
use mixshuffle_core::verify::{
    props, verify_fp_nonzero, verify_fp_weight0, verify_lyndon_over_z, verify_nested_alphabets, verify_radford_hoffman,
    verify_rbafp, verify_rbaz, verify_rbazp, verify_rbl, verify_z_polynomial, verify_zp, VerificationReport,
};
use mixshuffle_core::word::{cfl_factorize, enumerate_lyndon, LyndonFamily, Word, WordSet};
use serde_json::{json, Value};

use crate::config::{config_error, parse_lambda, parse_semigroup, resolve_ring, CliResult, ConfigError, RingKind};
use crate::{Cli, Command, Format, GenSet, RbOp};

pub struct Output {
    pub text: String,
    /// False only when a verification found a falsification.
    pub passed: bool,
}

impl Output {
    fn emit(cli: &Cli, table: String, json: Value) -> Self {
        let text = match cli.format {
            Format::Table => table,
            Format::Json => serde_json::to_string_pretty(&json).expect("JSON value serializes"),
        };
        Output { text, passed: true }
    }
}

pub const THEOREM_IDS: &[&str] = &[
    "radford", "msq", "psh", "pmsh", "isomor", "intfr", "dirsum", "rbl", "rbafp1", "rbafp2", "rbafp3", "rbafp4", "rbazp",
    "rbaz", "props",
];

pub fn run(cli: &Cli) -> CliResult<Output> {
    match &cli.command {
        Command::Mul { u, v } => mul(cli, u, v),
        Command::Lyndon => lyndon(cli),
        Command::Cfl { word } => cfl(cli, word),
        Command::Gens { set } => gens(cli, *set),
        Command::Rb { op } => rb(cli, op),
        Command::Verify { id, gens, alphabets } => verify(cli, id, gens.as_deref(), *alphabets),
    }
}

fn semigroup(cli: &Cli) -> CliResult<OrderedSemigroup> {
    let default = if matches!(cli.command, Command::Rb { .. }) { "monoid:x" } else { "free:x" };
    parse_semigroup(cli.sg.as_deref().unwrap_or(default))
}

fn length_bound(cli: &Cli) -> usize {
    cli.len.unwrap_or(cli.deg)
}

fn shuffle_algebra(cli: &Cli, sg: OrderedSemigroup) -> CliResult<std::sync::Arc<ShuffleAlgebra>> {
    let ring = resolve_ring(cli.ring.as_deref(), cli.p, cli.precision, None)?;
    let lambda = parse_lambda(ring, &cli.lambda)?;
    Ok(ShuffleAlgebra::new(ring, lambda, sg)?)
}

fn parse_word(sg: &OrderedSemigroup, s: &str) -> CliResult<Word> {
    Word::parse(sg, s).map_err(|e| ConfigError(format!("word '{s}': {e}")))
}

fn mul(cli: &Cli, u: &str, v: &str) -> CliResult<Output> {
    let sg = semigroup(cli)?;
    let (u, v) = (parse_word(&sg, u)?, parse_word(&sg, v)?);
    let alg = shuffle_algebra(cli, sg)?;
    let product = TensorPoly::from_terms(&alg, shuffle_words(&alg, &u, &v));
    Ok(Output::emit(cli, product.format(cli.ascii), product.to_json()))
}

/// Groups words by degree, or by length when the semigroup is not
/// positively graded (every letter then has degree 0).
fn grouped(sg: &OrderedSemigroup, words: &[Word]) -> (&'static str, BTreeMap<usize, Vec<Word>>) {
    let by_degree = sg.is_positively_graded();
    let mut groups: BTreeMap<usize, Vec<Word>> = BTreeMap::new();
    for w in words {
        groups.entry(if by_degree { w.degree() } else { w.len() }).or_default().push(w.clone());
    }
    (if by_degree { "degree" } else { "length" }, groups)
}

fn listing(cli: &Cli, sg: &OrderedSemigroup, name: &str, set: &WordSet) -> Output {
    let words: Vec<Word> = set.iter().cloned().collect();
    let (key, groups) = grouped(sg, &words);
    let mut table = format!("{name} over {}\n", sg.describe());
    let mut json_groups = Vec::new();
    for (k, ws) in &groups {
        let shown: Vec<String> = ws.iter().map(|w| w.format(sg, cli.ascii)).collect();
        let _ = writeln!(table, "{key} {k} ({}): {}", ws.len(), shown.join(", "));
        let letters: Vec<Vec<String>> =
            ws.iter().map(|w| w.letters().iter().map(|e| sg.format_elem(e, true)).collect()).collect();
        json_groups.push(json!({ key: k, "count": ws.len(), "words": letters }));
    }
    let counts: Vec<usize> = groups.values().map(Vec::len).collect();
    let json = json!({ "set": name, "semigroup": sg.describe(), "counts": counts, "groups": json_groups });
    Output::emit(cli, table, json)
}

fn lyndon(cli: &Cli) -> CliResult<Output> {
    let sg = semigroup(cli)?;
    let set = enumerate_lyndon(&sg, cli.deg, Some(length_bound(cli)))?;
    Ok(listing(cli, &sg, "Lyndon", &set))
}

fn cfl(cli: &Cli, word: &str) -> CliResult<Output> {
    let sg = semigroup(cli)?;
    let w = parse_word(&sg, word)?;
    let factors = cfl_factorize(&w)?;
    let mut shown = Vec::new();
    for (f, k) in &factors {
        for _ in 0..*k {
            shown.push(f.format(&sg, cli.ascii));
        }
    }
    let json_factors: Vec<Value> = factors
        .iter()
        .map(|(f, k)| {
            let letters: Vec<String> = f.letters().iter().map(|e| sg.format_elem(e, true)).collect();
            json!({ "word": letters, "multiplicity": k })
        })
        .collect();
    Ok(Output::emit(cli, shown.join(" | "), json!({ "factors": json_factors })))
}

fn prime_for(cli: &Cli) -> CliResult<u64> {
    if let Some(p) = cli.p {
        return Ok(p);
    }
    match cli.ring.as_deref().map(RingSpec::parse) {
        Some(Ok(r)) if r.prime().is_some() => Ok(r.prime().expect("checked")),
        _ => config_error("this command needs --p"),
    }
}

fn gens(cli: &Cli, set: GenSet) -> CliResult<Output> {
    let sg = semigroup(cli)?;
    let p = prime_for(cli)?;
    let fam = LyndonFamily::build(&sg, p, cli.deg, Some(length_bound(cli)))?;
    let (name, words) = match set {
        GenSet::L => ("L", &fam.l),
        GenSet::El => ("EL", &fam.el),
        GenSet::Tl => ("TL", &fam.tl),
        GenSet::Tel => ("TEL", &fam.tel),
        GenSet::Tl1 => ("TL_1", &fam.tl1),
        GenSet::Tl2 => ("TL_2", &fam.tl2),
        GenSet::Tel1 => ("TEL_1", &fam.tel1),
        GenSet::Tel2 => ("TEL_2", &fam.tel2),
        GenSet::Eettl => return eettl(cli, sg, p, &fam.tel2),
    };
    Ok(listing(cli, &sg, name, words))
}

fn eettl(cli: &Cli, sg: OrderedSemigroup, p: u64, tel2: &WordSet) -> CliResult<Output> {
    let ring = resolve_ring(cli.ring.as_deref(), Some(p), cli.precision, Some(RingKind::Fp))?;
    let lambda = parse_lambda(ring, &cli.lambda)?;
    let alg = ShuffleAlgebra::new(ring, lambda, sg.clone())?;
    let mut table = format!("EETL representatives over {}\n", sg.describe());
    let mut items = Vec::new();
    for w in tel2.iter() {
        let rep = eettl_representative(&alg, w, p)?;
        let _ = writeln!(table, "{}", rep.format(cli.ascii));
        items.push(rep.to_json());
    }
    Ok(Output::emit(cli, table, json!({ "set": "EETL", "semigroup": sg.describe(), "elements": items })))
}

fn rb(cli: &Cli, op: &RbOp) -> CliResult<Output> {
    let sg = semigroup(cli)?;
    let ring = resolve_ring(cli.ring.as_deref(), cli.p, cli.precision, None)?;
    let lambda = parse_lambda(ring, &cli.lambda)?;
    let alg = RbAlgebra::new(ring, lambda, sg)?;
    let parse = |s: &str| RbElement::parse_pure(&alg, s).map_err(|e| ConfigError(format!("tensor '{s}': {e}")));
    match op {
        RbOp::Mul { a, b } => {
            let prod = parse(a)?.try_mul(&parse(b)?)?;
            Ok(Output::emit(cli, prod.format(cli.ascii), prod.to_json()))
        }
        RbOp::P { a } => {
            let pa = parse(a)?.operator_p()?;
            Ok(Output::emit(cli, pa.format(cli.ascii), pa.to_json()))
        }
        RbOp::CheckIdentity { a, b } => {
            let check = check_rb_identity(&parse(a)?, &parse(b)?)?;
            let mut table = format!("P(a)P(b)                     = {}\nP(aP(b)) + P(P(a)b) + λP(ab) = {}\n", check.lhs, check.rhs);
            let _ = writeln!(table, "identity {}", if check.holds { "holds" } else { "FAILS" });
            let json = serde_json::to_value(&check).expect("check serializes");
            let mut out = Output::emit(cli, table, json);
            out.passed = check.holds;
            Ok(out)
        }
    }
}

fn verify(cli: &Cli, id: &str, gens: Option<&str>, alphabets: usize) -> CliResult<Output> {
    let implied = match id {
        "radford" | "msq" | "rbl" => Some(RingKind::Q),
        "psh" | "pmsh" | "rbafp1" | "rbafp2" | "rbafp3" | "rbafp4" => Some(RingKind::Fp),
        "isomor" | "rbazp" => Some(RingKind::Zp),
        "intfr" | "dirsum" | "rbaz" => Some(RingKind::Z),
        "props" => None,
        _ => return config_error(format!("unknown theorem id '{id}'; expected one of {}", THEOREM_IDS.join(", "))),
    };
    if gens.is_some() && id != "intfr" {
        return config_error("--gens only applies to intfr");
    }
    let (d, l) = (cli.deg, length_bound(cli));
    let report: VerificationReport = match implied {
        None => props::run_default_suite(cli.seed)?,
        Some(kind) => {
            let ring = resolve_ring(cli.ring.as_deref(), cli.p, cli.precision, Some(kind))?;
            let lambda = parse_lambda(ring, &cli.lambda)?;
            let sg = || semigroup(cli);
            match id {
                "radford" | "msq" => verify_radford_hoffman(&sg()?, &lambda, d, l)?,
                "psh" => verify_fp_weight0(&sg()?, ring.prime().expect("prime field"), d, l)?,
                "pmsh" => verify_fp_nonzero(&sg()?, &lambda, d, l)?,
                "isomor" => verify_zp(&sg()?, &lambda, d)?,
                "intfr" => match gens {
                    None => verify_z_polynomial(&sg()?, &lambda, d)?,
                    Some("lyndon") => verify_lyndon_over_z(&sg()?, &lambda, d)?,
                    Some(other) => return config_error(format!("unknown generator choice '{other}' (expected lyndon)")),
                },
                "dirsum" => verify_nested_alphabets(&lambda, alphabets, d)?,
                "rbl" => verify_rbl(&sg()?, &lambda, d, l)?,
                "rbafp1" | "rbafp2" | "rbafp3" | "rbafp4" => {
                    let case = id[5..].parse::<u8>().expect("id checked above");
                    verify_rbafp(case, &sg()?, &lambda, d, l)?
                }
                "rbazp" => verify_rbazp(&sg()?, &lambda, d, l)?,
                "rbaz" => verify_rbaz(&sg()?, &lambda, d, l)?,
                _ => unreachable!("id checked above"),
            }
        }
    };
    let mut report = report;
    report.theorem = id.to_string();
    let table = report.render_table();
    let table = if cli.ascii { table.replace('⊗', "(x)") } else { table };
    let mut out = Output::emit(cli, table, report.to_json());
    out.passed = report.passed;
    Ok(out)
}
