//! Command-line driver for the `lauricella` library.
//!
//! ```text
//! lauricella <eval|verify|bench> <poch|2f1|fd|cv|multinomial> [flags]
//! ```
//!
//! Results go to stdout, one JSON object (or plain scalar) per line;
//! diagnostics go to stderr. Exit status: 0 success, 1 input error,
//! 2 degenerate parameters, 3 verification failure.

use std::fmt::Write as _;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use lauricella::{
    benchmark_case, benchmark_spec, binomial, chu_vandermonde_pair, composition_count,
    enumerate_weak_compositions, eval_2f1, eval_fd_exact, eval_fd_float, factorial,
    falling_factorial, gauss_sum, generate_cases, multinomial, multinomial_intermediate,
    multinomial_lhs, multinomial_rhs, neg_n_pochhammer_ratio, rational::parse_vector,
    rising_factorial, sign, tail_pochhammer, toscano_transform, transform_2f1, verify_all,
    verify_identity, CaseBounds, Error, Gauss2F1Spec, IdentityCase, LauricellaSpec, Rational,
    SumMode,
};
use serde_json::{json, Map, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_DEGENERATE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    Eval,
    Verify,
    Bench,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Subject {
    Poch,
    #[value(name = "2f1")]
    Gauss,
    Fd,
    Cv,
    Multinomial,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    #[default]
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Output {
    #[default]
    Json,
    Plain,
}

/// Parsed command line. Scalars and vectors stay as text until the subject
/// is known, so `--x` can be a scalar for `2f1` and a vector for `fd`.
#[derive(Debug, Parser)]
#[command(
    name = "lauricella",
    version,
    about = "Exact hypergeometric polynomial evaluation and identity verification"
)]
pub struct Command {
    #[arg(value_enum)]
    pub verb: Verb,
    #[arg(value_enum)]
    pub subject: Subject,

    /// Degree
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of variables or parts (bench, verify poch)
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub w: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    /// 1-based pivot index; defaults to the weight of largest magnitude
    #[arg(long)]
    pub pivot: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub mode: Mode,
    /// Number of seeded random cases (verify multinomial)
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long = "r-max", default_value_t = 5)]
    pub r_max: usize,
    #[arg(long = "n-max", default_value_t = 12)]
    pub n_max: usize,
    /// Largest numerator/denominator magnitude of random parameters
    #[arg(long, default_value_t = 8)]
    pub magnitude: u32,
    /// Worker threads for batch verification
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub output: Output,
}

/// Everything a run produced.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = if err.is_degeneracy() {
            EXIT_DEGENERATE
        } else {
            EXIT_INPUT
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

/// Accumulates output lines and the worst status seen so far.
struct Session {
    output: Output,
    code: i32,
    stdout: String,
    stderr: String,
}

impl Session {
    fn emit(&mut self, value: Value) {
        match self.output {
            Output::Json => {
                self.stdout.push_str(&value.to_string());
            }
            Output::Plain => self.stdout.push_str(&plain(&value)),
        }
        self.stdout.push('\n');
    }

    fn note(&mut self, message: impl AsRef<str>) {
        let _ = writeln!(self.stderr, "{}", message.as_ref());
    }

    /// Records a status; verification failure outranks degeneracy.
    fn raise(&mut self, code: i32) {
        let rank = |c: i32| match c {
            EXIT_OK => 0,
            EXIT_DEGENERATE => 1,
            EXIT_MISMATCH => 2,
            _ => 3,
        };
        if rank(code) > rank(self.code) {
            self.code = code;
        }
    }
}

fn plain(value: &Value) -> String {
    let scalar = |v: &Value| match v {
        Value::String(s) => s.clone(),
        Value::Null => "undefined".to_owned(),
        other => other.to_string(),
    };
    match value {
        Value::Object(map) if map.len() == 1 && map.contains_key("value") => scalar(&map["value"]),
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{k}={}", scalar(v)))
            .collect::<Vec<_>>()
            .join(" "),
        other => scalar(other),
    }
}

/// Runs the CLI on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let command = match Command::try_parse_from(argv) {
        Ok(command) => command,
        Err(err) => {
            let code = if err.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_OK
            };
            let rendered = err.render().to_string();
            let (stdout, stderr) = if code == EXIT_OK {
                (rendered, String::new())
            } else {
                (String::new(), rendered)
            };
            return Outcome {
                code,
                stdout,
                stderr,
            };
        }
    };
    let mut session = Session {
        output: command.output,
        code: EXIT_OK,
        stdout: String::new(),
        stderr: String::new(),
    };
    if let Err(failure) = dispatch(&command, &mut session) {
        session.note(format!("error: {}", failure.message));
        session.raise(failure.code);
    }
    Outcome {
        code: session.code,
        stdout: session.stdout,
        stderr: session.stderr,
    }
}

fn used_flags(command: &Command) -> Vec<&'static str> {
    let c = command;
    let mut used = Vec::new();
    let mut mark = |present: bool, name: &'static str| {
        if present {
            used.push(name);
        }
    };
    mark(c.n.is_some(), "n");
    mark(c.r.is_some(), "r");
    mark(c.b.is_some(), "b");
    mark(c.c.is_some(), "c");
    mark(c.x.is_some(), "x");
    mark(c.a.is_some(), "a");
    mark(c.w.is_some(), "w");
    mark(c.alpha.is_some(), "alpha");
    mark(c.beta.is_some(), "beta");
    mark(c.z.is_some(), "z");
    mark(c.pivot.is_some(), "pivot");
    mark(c.mode != Mode::Exact, "mode");
    mark(c.trials.is_some(), "trials");
    mark(c.seed != 0, "seed");
    mark(c.r_max != 5, "r-max");
    mark(c.n_max != 12, "n-max");
    mark(c.magnitude != 8, "magnitude");
    mark(c.jobs.is_some(), "jobs");
    used
}

fn allowed_flags(verb: Verb, subject: Subject) -> Option<&'static [&'static str]> {
    use Subject::*;
    use Verb::*;
    Some(match (verb, subject) {
        (Eval, Poch) => &["n", "x"],
        (Verify, Poch) => &["n", "x", "r"],
        (Eval | Verify, Gauss) => &["n", "b", "c", "x"],
        (Eval, Fd) => &["n", "b", "c", "x", "mode"],
        (Verify, Fd) => &["n", "b", "c", "x"],
        (Eval | Verify, Cv) => &["n", "alpha", "beta", "w", "z"],
        (Eval, Multinomial) => &["n", "a", "w", "pivot"],
        (Verify, Multinomial) => &[
            "n",
            "a",
            "w",
            "pivot",
            "trials",
            "seed",
            "r-max",
            "n-max",
            "magnitude",
            "jobs",
        ],
        (Bench, Fd) => &["n", "r", "b", "c", "x", "mode"],
        (Bench, Multinomial) => &["n", "r", "a", "w", "pivot"],
        (Bench, _) => return None,
    })
}

fn dispatch(command: &Command, session: &mut Session) -> Result<(), Failure> {
    let Some(allowed) = allowed_flags(command.verb, command.subject) else {
        return Err(Failure::input(format!(
            "bench accepts only fd and multinomial, not {}",
            subject_name(command.subject)
        )));
    };
    if let Some(flag) = used_flags(command)
        .into_iter()
        .find(|f| !allowed.contains(f))
    {
        return Err(Failure::input(format!(
            "flag --{flag} is not used by {} {}",
            verb_name(command.verb),
            subject_name(command.subject)
        )));
    }
    let args = Args(command);
    match (command.verb, command.subject) {
        (Verb::Eval, Subject::Poch) => eval_poch(args, session),
        (Verb::Eval, Subject::Gauss) => eval_gauss(args, session),
        (Verb::Eval, Subject::Fd) => eval_fd(args, session),
        (Verb::Eval, Subject::Cv) => cv(args, session, false),
        (Verb::Eval, Subject::Multinomial) => eval_multinomial(args, session),
        (Verb::Verify, Subject::Poch) => verify_poch(args, session),
        (Verb::Verify, Subject::Gauss) => verify_gauss(args, session),
        (Verb::Verify, Subject::Fd) => verify_fd(args, session),
        (Verb::Verify, Subject::Cv) => cv(args, session, true),
        (Verb::Verify, Subject::Multinomial) => verify_multinomial(args, session),
        (Verb::Bench, Subject::Fd) => bench_fd(args, session),
        (Verb::Bench, Subject::Multinomial) => bench_multinomial(args, session),
        (Verb::Bench, _) => unreachable!("rejected above"),
    }
}

fn verb_name(verb: Verb) -> &'static str {
    match verb {
        Verb::Eval => "eval",
        Verb::Verify => "verify",
        Verb::Bench => "bench",
    }
}

fn subject_name(subject: Subject) -> &'static str {
    match subject {
        Subject::Poch => "poch",
        Subject::Gauss => "2f1",
        Subject::Fd => "fd",
        Subject::Cv => "cv",
        Subject::Multinomial => "multinomial",
    }
}

/// Typed accessors that name the offending flag on failure.
#[derive(Clone, Copy)]
struct Args<'a>(&'a Command);

impl Args<'_> {
    fn n(&self) -> Result<usize, Failure> {
        self.0.n.ok_or_else(|| Failure::input("missing --n"))
    }

    fn scalar(&self, value: &Option<String>, flag: &str) -> Result<Rational, Failure> {
        let text = value
            .as_deref()
            .ok_or_else(|| Failure::input(format!("missing --{flag}")))?;
        text.parse()
            .map_err(|err: Error| Failure::input(format!("invalid value for --{flag}: {err}")))
    }

    fn vector(&self, value: &Option<String>, flag: &str) -> Result<Vec<Rational>, Failure> {
        let text = value
            .as_deref()
            .ok_or_else(|| Failure::input(format!("missing --{flag}")))?;
        parse_vector(text)
            .map_err(|err| Failure::input(format!("invalid value for --{flag}: {err}")))
    }

    fn float_vector(&self, value: &Option<String>, flag: &str) -> Result<Vec<f64>, Failure> {
        let text = value
            .as_deref()
            .ok_or_else(|| Failure::input(format!("missing --{flag}")))?;
        text.split(',')
            .map(|item| parse_float(item.trim(), flag))
            .collect()
    }

    fn float(&self, value: &Option<String>, flag: &str) -> Result<f64, Failure> {
        let text = value
            .as_deref()
            .ok_or_else(|| Failure::input(format!("missing --{flag}")))?;
        parse_float(text, flag)
    }

    fn gauss_spec(&self) -> Result<Gauss2F1Spec, Failure> {
        Ok(Gauss2F1Spec::new(
            self.n()?,
            self.scalar(&self.0.b, "b")?,
            self.scalar(&self.0.c, "c")?,
            self.scalar(&self.0.x, "x")?,
        )?)
    }

    fn fd_spec(&self) -> Result<LauricellaSpec, Failure> {
        Ok(LauricellaSpec::new(
            self.n()?,
            self.vector(&self.0.b, "b")?,
            self.scalar(&self.0.c, "c")?,
            self.vector(&self.0.x, "x")?,
        )?)
    }

    fn identity_case(&self) -> Result<IdentityCase, Failure> {
        Ok(IdentityCase::new(
            self.n()?,
            self.vector(&self.0.a, "a")?,
            self.vector(&self.0.w, "w")?,
            self.0.pivot,
        )?)
    }
}

/// Accepts `p/q` rationals as well as ordinary decimal literals.
fn parse_float(text: &str, flag: &str) -> Result<f64, Failure> {
    if let Ok(q) = text.parse::<Rational>() {
        return Ok(q.to_f64());
    }
    text.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Failure::input(format!("invalid value for --{flag}: {text:?}")))
}

fn rational_or_null(value: &Result<Rational, Error>) -> Value {
    match value {
        Ok(v) => json!(v.to_string()),
        Err(_) => Value::Null,
    }
}

fn float_json(value: f64) -> Value {
    // JSON has no infinity; a vanishing sum reports a null condition.
    serde_json::Number::from_f64(value).map_or(Value::Null, Value::Number)
}

fn eval_poch(args: Args, session: &mut Session) -> Result<(), Failure> {
    let x = args.scalar(&args.0.x, "x")?;
    let value = rising_factorial(&x, args.n()?);
    session.emit(json!({ "value": value.to_string() }));
    Ok(())
}

fn eval_gauss(args: Args, session: &mut Session) -> Result<(), Failure> {
    let value = eval_2f1(&args.gauss_spec()?)?;
    session.emit(json!({ "value": value.to_string() }));
    Ok(())
}

fn eval_fd(args: Args, session: &mut Session) -> Result<(), Failure> {
    match args.0.mode {
        Mode::Exact => {
            let value = eval_fd_exact(&args.fd_spec()?)?;
            session.emit(json!({ "value": value.to_string() }));
        }
        Mode::Float => {
            let b = args.float_vector(&args.0.b, "b")?;
            let x = args.float_vector(&args.0.x, "x")?;
            let c = args.float(&args.0.c, "c")?;
            let result = eval_fd_float(args.n()?, &b, c, &x)?;
            session.emit(json!({
                "value": float_json(result.value),
                "condition": float_json(result.condition),
            }));
        }
    }
    Ok(())
}

fn cv(args: Args, session: &mut Session, verify: bool) -> Result<(), Failure> {
    let c = args.0;
    let pair = chu_vandermonde_pair(
        &args.scalar(&c.alpha, "alpha")?,
        &args.scalar(&c.beta, "beta")?,
        &args.scalar(&c.w, "w")?,
        &args.scalar(&c.z, "z")?,
        args.n()?,
    );
    let mut out = Map::new();
    out.insert("lhs".into(), json!(pair.lhs.to_string()));
    out.insert("rhs".into(), rational_or_null(&pair.rhs));
    if verify {
        let equal = pair.rhs.as_ref().is_ok_and(|rhs| *rhs == pair.lhs);
        out.insert("equal".into(), json!(equal));
        if pair.rhs.is_ok() && !equal {
            session.raise(EXIT_MISMATCH);
        }
    }
    if let Err(err) = &pair.rhs {
        out.insert("undefined".into(), json!(err.to_string()));
        session.note(format!("error: {err}"));
        session.raise(EXIT_DEGENERATE);
    }
    session.emit(Value::Object(out));
    Ok(())
}

fn eval_multinomial(args: Args, session: &mut Session) -> Result<(), Failure> {
    let case = args.identity_case()?;
    let lhs = multinomial_lhs(&case)?;
    let intermediate = multinomial_intermediate(&case);
    let rhs = multinomial_rhs(&case);
    let mut out = Map::new();
    out.insert("lhs".into(), json!(lhs.to_string()));
    out.insert("intermediate".into(), rational_or_null(&intermediate));
    out.insert("rhs".into(), rational_or_null(&rhs));
    let undefined: Vec<String> = [&intermediate, &rhs]
        .into_iter()
        .filter_map(|side| side.as_ref().err().map(ToString::to_string))
        .collect();
    if !undefined.is_empty() {
        for message in &undefined {
            session.note(format!("error: {message}"));
        }
        out.insert("undefined".into(), json!(undefined));
        session.raise(EXIT_DEGENERATE);
    }
    session.emit(Value::Object(out));
    Ok(())
}

/// Exhaustive checks of the shifted Pochhammer forms for every `k <= n`.
fn verify_poch(args: Args, session: &mut Session) -> Result<(), Failure> {
    let n = args.n()?;
    let r = args.0.r.unwrap_or(3);
    if r == 0 {
        return Err(Failure::input("--r must be at least 1"));
    }
    let neg_n = -Rational::from(n);
    let report = |session: &mut Session, identity: &str, checked: usize, failures: usize| {
        session.emit(json!({
            "identity": identity,
            "n": n,
            "checked": checked,
            "equal": failures == 0,
        }));
        if failures > 0 {
            session.raise(EXIT_MISMATCH);
        }
    };

    let mut failures = 0;
    for k in 0..=n {
        let lhs = Rational::from(binomial(n, k)?) * Rational::from(factorial(k));
        failures += usize::from(lhs != sign(k) * rising_factorial(&neg_n, k));
    }
    report(session, "binomial", n + 1, failures);

    let mut failures = 0;
    for k in 0..=n {
        let direct = Rational::from(falling_factorial(n, k)?);
        let ratio = neg_n_pochhammer_ratio(n, k)?;
        failures += usize::from(ratio != direct || ratio != sign(k) * rising_factorial(&neg_n, k));
    }
    report(session, "falling_ratio", n + 1, failures);

    let mut checked = 0;
    let mut failures = 0;
    for parts in enumerate_weak_compositions(r, n, SumMode::Exactly)? {
        let head = &parts.parts[..r - 1];
        let s: usize = head.iter().sum();
        let head_factorials: Rational =
            head.iter().map(|&m| Rational::from(factorial(m))).product();
        let shifted = sign(s) * rising_factorial(&neg_n, s) / head_factorials;
        failures += usize::from(Rational::from(multinomial(n, &parts.parts)?) != shifted);
        checked += 1;
    }
    report(session, "multinomial", checked, failures);

    if let Some(text) = &args.0.x {
        let x: Rational = text
            .parse()
            .map_err(|err: Error| Failure::input(format!("invalid value for --x: {err}")))?;
        let full = rising_factorial(&x, n);
        let reflected = Rational::one() - &x - Rational::from(n);
        let mut checked = 0;
        let mut failures = 0;
        let mut shift_failures = 0;
        for k in 0..=n {
            let tail = tail_pochhammer(&x, n, k)?;
            let denominator = rising_factorial(&reflected, k);
            shift_failures += usize::from(&tail * &denominator != sign(k) * &full);
            if !denominator.is_zero() {
                checked += 1;
                failures += usize::from(tail != sign(k) * &full / denominator);
            }
        }
        report(session, "tail", checked, failures);
        report(session, "tail_shift", n + 1, shift_failures);
    }
    Ok(())
}

fn verify_gauss(args: Args, session: &mut Session) -> Result<(), Failure> {
    let spec = args.gauss_spec()?;
    let value = eval_2f1(&spec)?;
    let at_one = eval_2f1(&Gauss2F1Spec {
        x: Rational::one(),
        ..spec.clone()
    })?;
    let closed = gauss_sum(spec.n, &spec.b, &spec.c)?;
    let gauss_equal = at_one == closed;
    let mut out = Map::new();
    out.insert("value".into(), json!(value.to_string()));
    out.insert("gauss_sum".into(), json!(closed.to_string()));
    out.insert("gauss_equal".into(), json!(gauss_equal));
    let mut equal = gauss_equal;
    match transform_2f1(&spec) {
        Ok(t) => {
            let transformed_value = eval_2f1(&t.transformed)?;
            let transform_equal = &t.factor * &transformed_value == value;
            equal &= transform_equal;
            out.insert("factor".into(), json!(t.factor.to_string()));
            out.insert("transformed_c".into(), json!(t.transformed.c.to_string()));
            out.insert("transformed_x".into(), json!(t.transformed.x.to_string()));
            out.insert(
                "transformed_value".into(),
                json!(transformed_value.to_string()),
            );
            out.insert("transform_equal".into(), json!(transform_equal));
        }
        Err(err) => {
            out.insert("undefined".into(), json!(err.to_string()));
            session.note(format!("error: {err}"));
            session.raise(EXIT_DEGENERATE);
        }
    }
    out.insert("equal".into(), json!(equal));
    if !equal {
        session.raise(EXIT_MISMATCH);
    }
    session.emit(Value::Object(out));
    Ok(())
}

fn verify_fd(args: Args, session: &mut Session) -> Result<(), Failure> {
    let spec = args.fd_spec()?;
    let value = eval_fd_exact(&spec)?;
    let mut out = Map::new();
    out.insert("value".into(), json!(value.to_string()));
    match toscano_transform(&spec) {
        Ok(t) => {
            let transformed_value = eval_fd_exact(&t.transformed)?;
            let equal = &t.factor * &transformed_value == value;
            out.insert("factor".into(), json!(t.factor.to_string()));
            out.insert("transformed_c".into(), json!(t.transformed.c.to_string()));
            out.insert(
                "transformed_x".into(),
                json!(lauricella::rational::format_vector(&t.transformed.x)),
            );
            out.insert(
                "transformed_value".into(),
                json!(transformed_value.to_string()),
            );
            out.insert("equal".into(), json!(equal));
            if !equal {
                session.raise(EXIT_MISMATCH);
            }
        }
        Err(err) => {
            out.insert("equal".into(), json!(false));
            out.insert("undefined".into(), json!(err.to_string()));
            session.note(format!("error: {err}"));
            session.raise(EXIT_DEGENERATE);
        }
    }
    session.emit(Value::Object(out));
    Ok(())
}

fn verify_multinomial(args: Args, session: &mut Session) -> Result<(), Failure> {
    let c = args.0;
    let Some(trials) = c.trials else {
        // Single explicit case.
        let report = verify_identity(&args.identity_case()?)?;
        session.emit(serde_json::to_value(&report).expect("report serializes"));
        if report.is_failure() {
            session.raise(EXIT_MISMATCH);
        } else if let Err(err) = &report.rhs {
            session.note(format!("error: {err}"));
            session.raise(EXIT_DEGENERATE);
        }
        return Ok(());
    };
    if let Some(flag) = [
        ("n", c.n.is_some()),
        ("a", c.a.is_some()),
        ("w", c.w.is_some()),
        ("pivot", c.pivot.is_some()),
    ]
    .into_iter()
    .find_map(|(name, used)| used.then_some(name))
    {
        return Err(Failure::input(format!(
            "flag --{flag} cannot be combined with --trials"
        )));
    }
    if c.jobs == Some(0) {
        return Err(Failure::input("--jobs must be at least 1"));
    }
    let bounds = CaseBounds {
        r_max: c.r_max,
        n_max: c.n_max,
        magnitude: c.magnitude,
    };
    let cases = generate_cases(c.seed, trials, bounds)?;
    let reports = verify_all(&cases, c.jobs)?;
    let (mut equal, mut degenerate, mut failed) = (0, 0, 0);
    for report in &reports {
        session.emit(serde_json::to_value(report).expect("report serializes"));
        if report.equal {
            equal += 1;
        } else if report.is_degenerate() {
            degenerate += 1;
        } else {
            failed += 1;
        }
    }
    session.note(format!(
        "{} cases: {equal} equal, {degenerate} degenerate, {failed} failed",
        reports.len()
    ));
    if failed > 0 {
        session.raise(EXIT_MISMATCH);
    }
    Ok(())
}

fn bench_r(args: Args) -> Result<usize, Failure> {
    args.0.r.ok_or_else(|| Failure::input("missing --r"))
}

fn per_second(terms: u128, nanos: u128) -> f64 {
    if nanos == 0 {
        f64::INFINITY
    } else {
        terms as f64 * 1e9 / nanos as f64
    }
}

fn bench_fd(args: Args, session: &mut Session) -> Result<(), Failure> {
    let c = args.0;
    let spec = if c.b.is_some() || c.c.is_some() || c.x.is_some() {
        args.fd_spec()?
    } else {
        benchmark_spec(args.n()?, bench_r(args)?)?
    };
    if let Some(r) = c.r {
        if r != spec.arity() {
            return Err(Failure::input(format!(
                "--r {r} does not match the {} entries of --b",
                spec.arity()
            )));
        }
    }
    let terms = spec.term_count();
    let start = Instant::now();
    let value = match c.mode {
        Mode::Exact => json!(eval_fd_exact(&spec)?.to_string()),
        Mode::Float => float_json(lauricella::eval_fd_float_spec(&spec)?.value),
    };
    let nanos = start.elapsed().as_nanos();
    session.emit(json!({
        "subject": "fd",
        "mode": match c.mode { Mode::Exact => "exact", Mode::Float => "float" },
        "n": spec.n,
        "r": spec.arity(),
        "terms": terms as u64,
        "elapsed_ns": nanos as u64,
        "terms_per_second": float_json(per_second(terms, nanos)),
        "value_digits": value.as_str().map_or(0, str::len),
    }));
    Ok(())
}

fn bench_multinomial(args: Args, session: &mut Session) -> Result<(), Failure> {
    let c = args.0;
    let case = if c.a.is_some() || c.w.is_some() {
        args.identity_case()?
    } else {
        let case = benchmark_case(args.n()?, bench_r(args)?)?;
        match c.pivot {
            Some(p) => case.with_pivot(p)?,
            None => case,
        }
    };
    if let Some(r) = c.r {
        if r != case.arity() {
            return Err(Failure::input(format!(
                "--r {r} does not match the {} entries of --a",
                case.arity()
            )));
        }
    }
    let lhs_terms = composition_count(case.arity(), case.n, SumMode::Exactly);
    let rhs_terms = case.rhs_term_count();

    let start = Instant::now();
    let lhs = multinomial_lhs(&case)?;
    let lhs_ns = start.elapsed().as_nanos();
    let start = Instant::now();
    let rhs = multinomial_rhs(&case)?;
    let rhs_ns = start.elapsed().as_nanos();

    let equal = lhs == rhs;
    session.emit(json!({
        "subject": "multinomial",
        "n": case.n,
        "r": case.arity(),
        "pivot": case.pivot,
        "lhs_terms": lhs_terms as u64,
        "rhs_terms": rhs_terms as u64,
        "lhs_elapsed_ns": lhs_ns as u64,
        "rhs_elapsed_ns": rhs_ns as u64,
        "elapsed_ns": (lhs_ns + rhs_ns) as u64,
        "terms_per_second": float_json(per_second(lhs_terms + rhs_terms, lhs_ns + rhs_ns)),
        "equal": equal,
    }));
    if !equal {
        session.raise(EXIT_MISMATCH);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &str) -> Outcome {
        run(std::iter::once("lauricella").chain(args.split_whitespace()))
    }

    #[test]
    fn plain_output() {
        let out = run_args("eval poch --x 1/2 --n 3 --output plain");
        assert_eq!(out.stdout, "15/8\n");
        let out = run_args("eval cv --alpha 1 --beta 1 --w 1 --z 1 --n 2 --output plain");
        assert_eq!(out.stdout, "lhs=6 rhs=6\n");
    }

    #[test]
    fn status_ranking() {
        let mut s = Session {
            output: Output::Json,
            code: EXIT_OK,
            stdout: String::new(),
            stderr: String::new(),
        };
        s.raise(EXIT_DEGENERATE);
        s.raise(EXIT_MISMATCH);
        s.raise(EXIT_DEGENERATE);
        assert_eq!(s.code, EXIT_MISMATCH);
        s.raise(EXIT_INPUT);
        assert_eq!(s.code, EXIT_INPUT);
    }

    #[test]
    fn float_parsing_accepts_rationals_and_decimals() {
        assert_eq!(parse_float("1/4", "x").unwrap(), 0.25);
        assert_eq!(parse_float("-0.5", "x").unwrap(), -0.5);
        assert!(parse_float("inf", "x").is_err());
        assert!(parse_float("1/0", "x").is_err());
    }
}
