//! Command-line front end for `unicusp-core`.
//!
//! Every subcommand prints one JSON object `{command, payload, schema_version}`
//! with sorted keys; `enumerate` can print TSV instead. Big integers are
//! decimal strings, exact rationals are `p/q` strings, and floating point
//! approximations are strings ending in `~`.

use std::ffi::OsString;
use std::io::Write;
use std::thread;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use unicusp_core::classify::{enumerate, enumerate_degrees, mediant_bound, sector_bounds, Sector};
use unicusp_core::families::{fib_identities, lucas_family, lucas_family_neg, orbit_members};
use unicusp_core::germs::{flex_check, germ_sequence};
use unicusp_core::obstruction::{check_multi, check_single};
use unicusp_core::quadring::{coprime_decompose, generating_set, has_solution};
use unicusp_core::semigroup::Semigroup;
use unicusp_core::{
    Candidate, EnumerationReport, Error, ExceptionFamily, ObstructionWitness, QuadInt, Side, Surd, Verdict,
};

pub const SCHEMA_VERSION: &str = "1";

/// Gap lists longer than this are left out of `semigroup` output.
const MAX_PRINTED_GAPS: u64 = 4096;

#[derive(Debug, Parser)]
#[command(name = "unicusp", version, about = "Candidate Puiseux pairs of unicuspidal plane curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Gaps and counting functions of the semigroup <a, b>.
    Semigroup(SemigroupArgs),
    /// Run the semicontinuity obstruction on one or several cusps.
    Check(CheckArgs),
    /// List all candidates of a genus up to a degree.
    Enumerate(EnumerateArgs),
    /// Solvability and orbit structure of x^2 - 5y^2 = n.
    Pell(PellArgs),
    /// Members of the Lucas families.
    Families(FamiliesArgs),
    /// Fibonacci sectors below b = phi^4 a with their bounds.
    Sectors(SectorsArgs),
    /// Germ series along the node branch, or the flex valuation check.
    Germ(GermArgs),
    /// Fibonacci identities and limit gaps.
    Identities(IdentitiesArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Query {
    #[value(name = "R")]
    R,
    #[value(name = "I")]
    I,
    #[value(name = "gamma")]
    Gamma,
}

#[derive(Debug, Args)]
struct SemigroupArgs {
    #[arg(short)]
    a: u64,
    #[arg(short)]
    b: u64,
    #[arg(long, requires = "arg")]
    query: Option<Query>,
    #[arg(long, requires = "query", allow_negative_numbers = true)]
    arg: Option<i64>,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long)]
    genus: u64,
    #[arg(short, required_unless_present = "pairs", requires = "b", conflicts_with = "pairs")]
    a: Option<u64>,
    #[arg(short, required_unless_present = "pairs", requires = "a", conflicts_with = "pairs")]
    b: Option<u64>,
    /// Degree; solved from the degree-genus identity when omitted.
    #[arg(short)]
    d: Option<u64>,
    /// Several cusps, as "a1,b1;a2,b2".
    #[arg(long)]
    pairs: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[arg(long)]
    genus: u64,
    #[arg(long)]
    dmax: u64,
    /// Include the smooth pair (1, 3d - 1) when (d-1)(d-2) = 2g.
    #[arg(long)]
    allow_smooth: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=256))]
    jobs: u64,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("target").required(true).args(["n", "genus"]))]
struct PellArgs {
    #[arg(long = "n", allow_negative_numbers = true)]
    n: Option<i64>,
    /// Uses n = 4(2g - 1).
    #[arg(long)]
    genus: Option<u64>,
    /// Unit orbit range "HMIN:HMAX" of the genus seeds.
    #[arg(long, allow_hyphen_values = true)]
    orbit: Option<String>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("index").required(true).args(["i", "j"]))]
struct FamiliesArgs {
    #[arg(long = "k")]
    k: i64,
    #[arg(long = "i")]
    i: Option<i64>,
    #[arg(long = "j")]
    j: Option<i64>,
}

#[derive(Debug, Args)]
struct SectorsArgs {
    #[arg(long)]
    genus: u64,
    #[arg(long)]
    lmax: u64,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("kind").required(true).args(["node", "flex"]))]
struct GermArgs {
    /// Germs f_1 .. f_NMAX along the node branch.
    #[arg(long, value_name = "NMAX")]
    node: Option<usize>,
    /// Flex check in degree D.
    #[arg(long, value_name = "D")]
    flex: Option<u32>,
    #[arg(long)]
    order: usize,
}

#[derive(Debug, Args)]
struct IdentitiesArgs {
    #[arg(long)]
    lmax: u64,
}

enum Failure {
    Usage(String),
    Math(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Math(e)
    }
}

struct Output {
    command: &'static str,
    body: Body,
    exit: i32,
}

enum Body {
    Json(Value),
    Text(String),
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the exit code: 0 on success, 1 when `check` finds an obstruction,
/// 2 on usage or validation errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
                2
            } else {
                let _ = out.write_all(rendered.as_bytes());
                0
            };
        }
    };
    match dispatch(cli.command) {
        Ok(output) => {
            let text = match output.body {
                Body::Json(payload) => render(output.command, payload),
                Body::Text(t) => t,
            };
            if out.write_all(text.as_bytes()).is_err() {
                return 2;
            }
            output.exit
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Math(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn render(command: &str, payload: Value) -> String {
    let record = json!({
        "command": command,
        "payload": payload,
        "schema_version": SCHEMA_VERSION,
    });
    let mut text = serde_json::to_string_pretty(&record).expect("JSON values always serialize");
    text.push('\n');
    text
}

fn dispatch(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Semigroup(a) => json_output("semigroup", semigroup(a)?),
        Command::Check(a) => check(a),
        Command::Enumerate(a) => enumerate_cmd(a),
        Command::Pell(a) => json_output("pell", pell(a)?),
        Command::Families(a) => json_output("families", families(a)?),
        Command::Sectors(a) => json_output("sectors", sectors(a)?),
        Command::Germ(a) => json_output("germ", germ(a)?),
        Command::Identities(a) => json_output("identities", identities(a)?),
    }
}

fn json_output(command: &'static str, payload: Value) -> Result<Output, Failure> {
    Ok(Output { command, body: Body::Json(payload), exit: 0 })
}

fn approx(x: f64) -> String {
    format!("{x:.12e}~")
}

fn quad_json(z: &QuadInt) -> Value {
    json!({ "u": z.u().to_string(), "v": z.v().to_string(), "value": z.to_string() })
}

fn surd_json(s: &Surd) -> Value {
    json!({ "exact": s.to_string(), "approx": approx(s.to_f64()) })
}

fn semigroup(args: SemigroupArgs) -> Result<Value, Failure> {
    let s = Semigroup::new(args.a, args.b)?;
    let mut payload = Map::new();
    payload.insert("a".into(), json!(s.a()));
    payload.insert("b".into(), json!(s.b()));
    payload.insert("delta".into(), json!(s.delta()));
    payload.insert("frobenius".into(), json!(s.frobenius()));
    let gaps = if s.delta() <= MAX_PRINTED_GAPS { json!(s.gaps()) } else { Value::Null };
    payload.insert("gaps".into(), gaps);
    if let (Some(query), Some(m)) = (args.query, args.arg) {
        let (name, value) = match query {
            Query::R => ("R", json!(s.count_r(m))),
            Query::I => ("I", json!(s.count_i(m))),
            Query::Gamma => {
                let n = u64::try_from(m).ok().filter(|&n| n >= 1);
                let n = n.ok_or_else(|| Failure::Usage("gamma needs --arg of at least 1".into()))?;
                ("gamma", json!(s.nth_element(n)?))
            }
        };
        payload.insert("query".into(), json!({ "name": name, "arg": m, "value": value }));
    }
    Ok(Value::Object(payload))
}

fn parse_pairs(text: &str) -> Result<Vec<(u64, u64)>, Failure> {
    let bad = || Failure::Usage(format!("cannot parse --pairs {text:?}; expected \"a1,b1;a2,b2\""));
    text.split(';')
        .map(|part| {
            let (a, b) = part.split_once(',').ok_or_else(bad)?;
            Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}

/// Smallest `d` with `(d-1)(d-2) = 2(delta + g)`.
fn solve_degree(total_delta: u128, g: u64) -> Option<u64> {
    let target = 2 * (total_delta + g as u128);
    let disc = 4 * target + 1;
    let k = disc.isqrt();
    (k * k == disc).then(|| ((k + 3) / 2) as u64)
}

fn witness_json(w: &ObstructionWitness) -> Value {
    json!({
        "j": w.j,
        "k": w.k,
        "triangular": w.triangular,
        "value": w.lhs_value,
        "side": match w.side { Side::Lower => "lower", Side::Upper => "upper" },
    })
}

fn verdict_json(v: &Verdict) -> Value {
    json!({
        "admissible": v.admissible(),
        "checks_performed": v.checks_performed,
        "witness": v.witness.as_ref().map(witness_json),
    })
}

fn check(args: CheckArgs) -> Result<Output, Failure> {
    let g = args.genus;
    let pairs = match (&args.pairs, args.a, args.b) {
        (Some(text), _, _) => parse_pairs(text)?,
        (None, Some(a), Some(b)) => vec![(a, b)],
        _ => return Err(Failure::Usage("give -a and -b, or --pairs".into())),
    };
    let mut total_delta: u128 = 0;
    for &(a, b) in &pairs {
        total_delta += Semigroup::new(a, b)?.delta() as u128;
    }
    let d = match args.d {
        Some(d) => d,
        None => solve_degree(total_delta, g)
            .ok_or_else(|| Failure::Usage(format!("no integral degree fits delta = {total_delta} and genus {g}")))?,
    };
    let verdict = if pairs.len() == 1 {
        check_single(pairs[0].0, pairs[0].1, g, d)?
    } else {
        check_multi(&pairs, g, d)?
    };
    let mut payload = verdict_json(&verdict).as_object().cloned().unwrap_or_default();
    payload.insert("genus".into(), json!(g));
    payload.insert("degree".into(), json!(d));
    payload.insert("pairs".into(), json!(pairs.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>()));
    if let [(a, b)] = pairs[..] {
        let c = Candidate::new(g, a, b, d)?;
        payload.insert("on_3d_line".into(), json!(c.on_3d_line()));
        payload.insert("element".into(), c.element.as_ref().map(quad_json).unwrap_or(Value::Null));
    }
    let exit = if verdict.admissible() { 0 } else { 1 };
    Ok(Output { command: "check", body: Body::Json(Value::Object(payload)), exit })
}

fn parallel_report(g: u64, d_max: u64, allow_smooth: bool, jobs: u64) -> Result<EnumerationReport, Error> {
    if jobs <= 1 || d_max < 3 {
        return enumerate(g, d_max, allow_smooth);
    }
    let parts: Vec<Result<Vec<Candidate>, Error>> = thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|w| {
                scope.spawn(move || {
                    let mut found = Vec::new();
                    let mut d = 1 + w;
                    while d <= d_max {
                        found.extend(enumerate_degrees(g, d..=d, allow_smooth)?);
                        d += jobs;
                    }
                    Ok(found)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("enumeration worker panicked")).collect()
    });
    let mut candidates = Vec::new();
    for part in parts {
        candidates.extend(part?);
    }
    Ok(EnumerationReport::from_candidates(g, d_max, candidates))
}

fn family_name(f: Option<ExceptionFamily>) -> &'static str {
    f.map_or("-", ExceptionFamily::name)
}

fn candidate_json(c: &Candidate) -> Value {
    json!({
        "a": c.a,
        "b": c.b,
        "d": c.d,
        "admissible": c.admissible,
        "on_3d_line": c.on_3d_line(),
    })
}

fn enumerate_cmd(args: EnumerateArgs) -> Result<Output, Failure> {
    let report = parallel_report(args.genus, args.dmax, args.allow_smooth, args.jobs)?;
    let family_of = |c: &Candidate| {
        report
            .exceptions
            .iter()
            .find(|e| (e.candidate.a, e.candidate.b, e.candidate.d) == (c.a, c.b, c.d))
            .map(|e| family_name(e.family))
    };
    let body = match args.format {
        Format::Tsv => {
            let mut t = String::from("a\tb\td\tadmissible\ton_3d_line\tfamily\n");
            for c in &report.candidates {
                let admissible = c.admissible.map_or("-".to_string(), |x| x.to_string());
                let family = family_of(c).unwrap_or("-");
                t.push_str(&format!("{}\t{}\t{}\t{}\t{}\t{}\n", c.a, c.b, c.d, admissible, c.on_3d_line(), family));
            }
            Body::Text(t)
        }
        Format::Json => {
            let exceptions: Vec<Value> = report
                .exceptions
                .iter()
                .map(|e| {
                    let mut v = candidate_json(&e.candidate);
                    v["family"] = json!(family_name(e.family));
                    v
                })
                .collect();
            let untagged: Vec<Value> = report.untagged().map(candidate_json).collect();
            Body::Json(json!({
                "genus": report.g,
                "d_max": report.d_max,
                "allow_smooth": args.allow_smooth,
                "candidates": report.candidates.iter().map(candidate_json).collect::<Vec<_>>(),
                "counts": {
                    "candidates": report.candidates.len(),
                    "admissible": report.admissible.len(),
                    "on_3d_line": report.on_3d_line.len(),
                    "exceptions": report.exceptions.len(),
                },
                "exceptions": exceptions,
                "untagged": untagged,
                "max_exceptional_degree": report.max_exceptional_degree(),
            }))
        }
    };
    Ok(Output { command: "enumerate", body, exit: 0 })
}

fn parse_range(text: &str) -> Result<(i64, i64), Failure> {
    let bad = || Failure::Usage(format!("cannot parse --orbit {text:?}; expected HMIN:HMAX"));
    let (lo, hi) = text.split_once(':').ok_or_else(bad)?;
    let (lo, hi): (i64, i64) = (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?);
    if lo > hi || hi - lo > 10_000 {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn decomposition_json(n: i64) -> Result<Value, Failure> {
    let Some(dec) = coprime_decompose(n) else { return Ok(Value::Null) };
    let gens = generating_set(n)?;
    Ok(json!({
        "a_part": dec.a_part,
        "n_prime": dec.n_prime,
        "omega": dec.omega,
        "big_omega": dec.big_omega,
        "primes": dec.primes().iter().map(|&(p, e)| json!([p, e])).collect::<Vec<_>>(),
        "witness": [dec.witness.0.to_string(), dec.witness.1.to_string()],
        "generating_set": gens.iter().map(quad_json).collect::<Vec<_>>(),
    }))
}

fn pell(args: PellArgs) -> Result<Value, Failure> {
    if let Some(n) = args.n {
        if args.orbit.is_some() {
            return Err(Failure::Usage("--orbit needs --genus".into()));
        }
        return Ok(json!({
            "n": n,
            "solvable": has_solution(n)?,
            "coprime": decomposition_json(n)?,
        }));
    }
    let g = args.genus.ok_or_else(|| Failure::Usage("give --n or --genus".into()))?;
    if g == 0 {
        return Err(Failure::Usage("--genus must be at least 1 (n = 4(2g-1) must be positive)".into()));
    }
    let n = 4 * (2 * g as i64 - 1);
    let half = 2 * g as i64 - 1;
    // Pairs need gcd(x, y) in {1, 2}, so every one lies in the orbit of
    // 2 beta for a generator beta of norm 2g - 1.
    let seeds: Vec<QuadInt> = match coprime_decompose(half) {
        Some(_) => generating_set(half)?.iter().map(|b| b * &QuadInt::from_xy(2, 0)).collect(),
        None => Vec::new(),
    };
    let mut payload = Map::new();
    payload.insert("genus".into(), json!(g));
    payload.insert("n".into(), json!(n));
    payload.insert("genus_mod_3".into(), json!(g % 3));
    payload.insert("solvable".into(), json!(has_solution(n)?));
    payload.insert("coprime".into(), decomposition_json(n)?);
    payload.insert("seeds".into(), json!(seeds.iter().map(quad_json).collect::<Vec<_>>()));
    if let Some(text) = &args.orbit {
        let (h_min, h_max) = parse_range(text)?;
        let mut members = Vec::new();
        let mut parities = std::collections::BTreeSet::new();
        for (s, seed) in seeds.iter().enumerate() {
            for m in orbit_members(seed, g, h_min, h_max)? {
                parities.insert(m.h.rem_euclid(2));
                let mut v = candidate_json(&m.candidate);
                v["admissible"] = admissibility(&m.candidate)?;
                v["seed"] = json!(s);
                v["h"] = json!(m.h);
                v["conjugated"] = json!(m.conjugated);
                v["element"] = m.candidate.element.as_ref().map(quad_json).unwrap_or(Value::Null);
                members.push(v);
            }
        }
        payload.insert("orbit".into(), json!({ "h_min": h_min, "h_max": h_max, "members": members, "h_parities": parities }));
    }
    Ok(Value::Object(payload))
}

/// Very large candidates are too big to sieve; their verdict is left open.
fn admissibility(c: &Candidate) -> Result<Value, Failure> {
    match check_single(c.a, c.b, c.g, c.d) {
        Ok(v) => Ok(json!(v.admissible())),
        Err(Error::TooLarge { .. }) => Ok(Value::Null),
        Err(e) => Err(e.into()),
    }
}

fn families(args: FamiliesArgs) -> Result<Value, Failure> {
    let (c, index) = match (args.i, args.j) {
        (Some(i), _) => (lucas_family(args.k, i)?, json!({ "i": i })),
        (None, Some(j)) => (lucas_family_neg(args.k, j)?, json!({ "j": j })),
        (None, None) => return Err(Failure::Usage("give --i or --j".into())),
    };
    let admissible = admissibility(&c)?;
    Ok(json!({
        "k": args.k,
        "index": index,
        "genus": c.g,
        "a": c.a,
        "b": c.b,
        "d": c.d,
        "on_3d_line": c.on_3d_line(),
        "element": c.element.as_ref().map(quad_json),
        "admissible": admissible,
    }))
}

fn sectors(args: SectorsArgs) -> Result<Value, Failure> {
    if args.lmax < 2 {
        return Err(Failure::Usage("--lmax must be at least 2".into()));
    }
    let mut rows = Vec::new();
    for l in 2..=args.lmax {
        let s = Sector::new(l)?;
        let (a_bound, b_bound) = sector_bounds(args.genus, l)?;
        let small = |q: &num_rational::BigRational| -> Result<(u64, u64), Failure> {
            let n = u64::try_from(q.numer()).map_err(|_| Error::Overflow)?;
            let d = u64::try_from(q.denom()).map_err(|_| Error::Overflow)?;
            Ok((n, d))
        };
        let mediant = match (small(&s.low), small(&s.high)) {
            (Ok((m1, n1)), Ok((m2, n2))) => {
                let (b_min, a_min) = mediant_bound(m1, n1, m2, n2)?;
                json!({ "b_min": b_min.to_string(), "a_min": a_min.to_string() })
            }
            _ => Value::Null,
        };
        let ratio = |q: &num_rational::BigRational| {
            json!({ "exact": q.to_string(), "approx": approx(to_f64(q)) })
        };
        rows.push(json!({
            "l": l,
            "low": ratio(&s.low),
            "high": ratio(&s.high),
            "puncture": [s.puncture.0.to_string(), s.puncture.1.to_string()],
            "a_bound": a_bound.to_string(),
            "b_bound": b_bound.to_string(),
            "mediant": mediant,
        }));
    }
    Ok(json!({ "genus": args.genus, "l_max": args.lmax, "sectors": rows }))
}

fn to_f64(q: &num_rational::BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

fn germ(args: GermArgs) -> Result<Value, Failure> {
    if let Some(d) = args.flex {
        let r = flex_check(d, args.order)?;
        return Ok(json!({
            "kind": "flex",
            "d": r.d,
            "order": r.order,
            "valuation": r.valuation,
            "expected_valuation": 3 * r.d as usize,
            "leading": r.leading.to_string(),
        }));
    }
    let n_max = args.node.ok_or_else(|| Failure::Usage("give --node or --flex".into()))?;
    let records = germ_sequence(n_max, args.order)?;
    let rows: Vec<Value> = records
        .iter()
        .map(|r| {
            let terms: Vec<Value> =
                r.polynomial.terms().map(|(&(i, j), c)| json!({ "i": i, "j": j, "coeff": c.to_string() })).collect();
            json!({
                "n": r.n,
                "c": r.c.to_string(),
                "valuation": r.valuation,
                "support_ok": r.support_ok(),
                "y_coefficient": r.y_coefficient().to_string(),
                "terms": terms,
            })
        })
        .collect();
    Ok(json!({ "kind": "node", "n_max": n_max, "order": args.order, "germs": rows }))
}

fn identities(args: IdentitiesArgs) -> Result<Value, Failure> {
    let r = fib_identities(args.lmax)?;
    let failures: Vec<Value> =
        r.failures.iter().map(|f| json!({ "identity": f.identity, "index": f.index })).collect();
    Ok(json!({
        "l_max": r.l_max,
        "checks": r.checks,
        "all_hold": r.all_hold(),
        "failures": failures,
        "lim1_gap": surd_json(&r.lim1_gap),
        "lim2_gap": surd_json(&r.lim2_gap),
    }))
}
