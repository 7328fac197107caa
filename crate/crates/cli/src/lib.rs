//! Command-line front end. `run` is separated from `main` so tests can drive it in-process.

use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pcf_core::cfcore::{reduce, FcfClass};
use pcf_core::convergence::{classify, float_oracle, to_json, ConvergenceReport};
use pcf_core::grouptheory::{amalgam_relations, exception_table, six_term_kernel, KernelCertificate, Variant};
use pcf_core::matrix2::{mat_of_fcf, quad, roots_in, Mat2, PowerLimit, ProjPoint, QuadPoly};
use pcf_core::pcf::{characters, Characters, Pcf};
use pcf_core::syntax::{parse_element, parse_literal, Literal};
use pcf_core::{BaseField, Error, RingElem};

#[derive(Parser, Debug)]
#[command(name = "pcf", version, about = "Exact computations with finite and periodic continued fractions")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Working precision in bits for decimal renderings.
    #[arg(long, global = true, default_value_t = 100)]
    pub precision: u32,
    /// Number of periods for the numerical cross-check.
    #[arg(long, global = true, default_value_t = 200)]
    pub periods: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduced representative of an FCF class, or the normal form of a PCF.
    Reduce { input: Option<String> },
    /// Product of two classes.
    Star { left: String, right: String },
    /// Inverse class; for a PCF also prints its Galois dual.
    Inverse { input: Option<String> },
    /// M(F) for an FCF, E(P) for a PCF.
    Matrix { input: Option<String> },
    /// Quad of a PCF or matrix.
    Quad { input: Option<String> },
    /// Roots of a PCF, matrix or poly(A,B,C).
    Roots { input: Option<String> },
    /// Convergence classification of a PCF.
    Classify { input: Option<String> },
    /// Per-residue decimation limits of a PCF.
    Limits { input: Option<String> },
    /// Eigenvalue characters of a PCF.
    Chars { input: Option<String> },
    /// Whether two FCFs or two PCFs are equivalent.
    Equiv { left: String, right: String },
    /// Numerical convergents.
    Eval {
        input: Option<String>,
        #[arg(short = 'n', long, default_value_t = 10)]
        count: usize,
    },
    /// Kernel certificate for a word, a six-term family, or the built-in tables.
    KernelCheck {
        input: Option<String>,
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
        /// Value of alpha for the alpha family.
        #[arg(long)]
        alpha: Option<String>,
        /// Check every exception-table element.
        #[arg(long)]
        exceptions: bool,
        /// Check the amalgam relations for SL_2(Z).
        #[arg(long)]
        amalgam: bool,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Inverse,
    Four,
    Three,
    Alpha,
}

/// Result of one invocation.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(p) => Failure::Usage(format!("parse error at byte {}: {}", p.offset, p.message)),
            other => Failure::Domain(other.to_string()),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

struct Ctx {
    json: bool,
    bits: u32,
    periods: usize,
}

impl Ctx {
    fn digits(&self) -> usize {
        ((self.bits as f64) * std::f64::consts::LOG10_2).floor().max(1.0) as usize
    }

    fn dec(&self, x: &RingElem) -> String {
        x.complex_eval(self.bits).to_decimal(self.digits())
    }

    fn point(&self, p: &ProjPoint) -> (String, String) {
        match p {
            ProjPoint::Infinity => ("inf".into(), "inf".into()),
            ProjPoint::Finite(x) => (x.to_string(), self.dec(x)),
        }
    }

    fn point_json(&self, p: &ProjPoint) -> Value {
        let (e, d) = self.point(p);
        json!({"exact": e, "decimal": d})
    }

    fn point_text(&self, p: &ProjPoint) -> String {
        let (e, d) = self.point(p);
        if e == d {
            e
        } else {
            format!("{e} ~ {d}")
        }
    }
}

/// Parses `argv` (including the program name) and executes the command.
pub fn run<I, S>(argv: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: 1, stdout: String::new(), stderr: text },
            };
        }
    };
    let ctx = Ctx { json: cli.json, bits: cli.precision.clamp(8, 1 << 16), periods: cli.periods.max(1) };
    match execute(&ctx, cli.command, stdin) {
        Ok(out) => Outcome { code: 0, stdout: out, stderr: String::new() },
        Err(Failure::Usage(m)) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {m}\n") },
        Err(Failure::Domain(m)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {m}\n") },
    }
}

fn read_input(given: Option<String>, stdin: &mut dyn Read) -> Res<String> {
    match given {
        Some(s) if s != "-" => Ok(s),
        _ => {
            let mut buf = String::new();
            stdin.read_to_string(&mut buf).map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
            let line = buf.lines().map(str::trim).find(|l| !l.is_empty());
            line.map(str::to_string).ok_or_else(|| Failure::Usage("no input given".into()))
        }
    }
}

fn want_pcf(lit: Literal) -> Res<Pcf> {
    match lit {
        Literal::Pcf(p) => Ok(p),
        other => Err(Failure::Usage(format!("expected a PCF literal [b...; a...], got {other}"))),
    }
}

fn emit(ctx: &Ctx, v: Value, text: String) -> String {
    if ctx.json {
        format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
    } else {
        text
    }
}

fn mat_json(m: &Mat2) -> Value {
    json!([[m.m11.to_string(), m.m12.to_string()], [m.m21.to_string(), m.m22.to_string()]])
}

fn quad_json(q: &QuadPoly) -> Value {
    json!({"a": q.a.to_string(), "b": q.b.to_string(), "c": q.c.to_string()})
}

fn class_of(lit: Literal) -> Res<Either> {
    match lit {
        Literal::Fcf(f) => Ok(Either::F(reduce(&f))),
        Literal::Pcf(p) => Ok(Either::P(p)),
        other => Err(Failure::Usage(format!("expected a continued fraction, got {other}"))),
    }
}

enum Either {
    F(FcfClass),
    P(Pcf),
}

fn execute(ctx: &Ctx, cmd: Command, stdin: &mut dyn Read) -> Res<String> {
    match cmd {
        Command::Reduce { input } => {
            let out = match class_of(parse_literal(&read_input(input, stdin)?)?)? {
                Either::F(c) => c.to_string(),
                Either::P(p) => p.normal_form().to_string(),
            };
            Ok(emit(ctx, json!({"reduced": out}), format!("{out}\n")))
        }
        Command::Star { left, right } => {
            let out = match (class_of(parse_literal(&left)?)?, class_of(parse_literal(&right)?)?) {
                (Either::F(a), Either::F(b)) => a.star(&b)?.to_string(),
                (Either::P(a), Either::P(b)) => a.normal_form().star(&b.normal_form())?.to_string(),
                _ => return Err(Failure::Usage("star needs two FCFs or two PCFs".into())),
            };
            Ok(emit(ctx, json!({"product": out}), format!("{out}\n")))
        }
        Command::Inverse { input } => match class_of(parse_literal(&read_input(input, stdin)?)?)? {
            Either::F(c) => {
                let inv = c.inverse().to_string();
                Ok(emit(ctx, json!({"inverse": inv}), format!("{inv}\n")))
            }
            Either::P(p) => {
                let dual = p.galois_dual();
                let inv = dual.normal_form().to_string();
                let text = format!("dual: {dual}\ninverse class: {inv}\n");
                Ok(emit(ctx, json!({"dual": dual.to_string(), "inverse": inv}), text))
            }
        },
        Command::Matrix { input } => {
            let m = match parse_literal(&read_input(input, stdin)?)? {
                Literal::Fcf(f) => mat_of_fcf(&f),
                Literal::Pcf(p) => p.e_matrix(),
                Literal::Matrix(m) => m,
                other => return Err(Failure::Usage(format!("expected a continued fraction, got {other}"))),
            };
            let text = format!("{m}\ndet = {}\n", m.det());
            Ok(emit(ctx, json!({"matrix": mat_json(&m), "det": m.det().to_string()}), text))
        }
        Command::Quad { input } => {
            let q = quad_input(parse_literal(&read_input(input, stdin)?)?)?.0;
            Ok(emit(ctx, json!({"quad": quad_json(&q)}), format!("{q}\n")))
        }
        Command::Roots { input } => {
            let (q, base) = quad_input(parse_literal(&read_input(input, stdin)?)?)?;
            let rp = roots_in(&q, &base)?;
            let kind = format!("{:?}", rp.kind);
            let mut text = format!("{q}\nkind: {kind}\n");
            for r in &rp.roots {
                text += &format!("  {}\n", ctx.point_text(r));
            }
            let roots: Vec<Value> = rp.roots.iter().map(|r| ctx.point_json(r)).collect();
            Ok(emit(ctx, json!({"quad": quad_json(&q), "kind": kind, "roots": roots}), text))
        }
        Command::Classify { input } => {
            let p = want_pcf(parse_literal(&read_input(input, stdin)?)?)?;
            let rep = classify(&p)?;
            Ok(emit(ctx, report_json(ctx, &p, &rep), classify_text(ctx, &rep)))
        }
        Command::Limits { input } => {
            let p = want_pcf(parse_literal(&read_input(input, stdin)?)?)?;
            let rep = classify(&p)?;
            let mut text = classify_text(ctx, &rep);
            text += "residues:\n";
            for r in &rep.residues {
                let lim = match &r.limit {
                    Some(PowerLimit::Limit(x)) => ctx.point_text(x),
                    _ => "divergent".to_string(),
                };
                let heavy = if r.heavy { " (heavy)" } else { "" };
                text += &format!("  j={}: {lim}{heavy}\n", r.j);
            }
            Ok(emit(ctx, report_json(ctx, &p, &rep), text))
        }
        Command::Chars { input } => {
            let p = want_pcf(parse_literal(&read_input(input, stdin)?)?)?;
            let det = p.e_matrix().det();
            match characters(&p)? {
                Characters::Scalar(c) => {
                    let text = format!("E(P) is scalar: {c}\ndet = {det}\n");
                    Ok(emit(ctx, json!({"scalar": c.to_string(), "det": det.to_string()}), text))
                }
                Characters::Roots(cs) => {
                    let product = &cs[0].value * &cs[1].value;
                    let mut text = String::new();
                    let mut arr = Vec::new();
                    for c in &cs {
                        text += &format!(
                            "root {}: value {}\n",
                            ctx.point_text(&c.root),
                            ctx.point_text(&ProjPoint::Finite(c.value.clone()))
                        );
                        arr.push(json!({
                            "root": ctx.point_json(&c.root),
                            "value": ctx.point_json(&ProjPoint::Finite(c.value.clone())),
                        }));
                    }
                    let unit = cs[0].is_unit_norm;
                    text += &format!("product = {product}, det = {det}, units: {unit}\n");
                    let v = json!({
                        "characters": arr,
                        "product": product.to_string(),
                        "det": det.to_string(),
                        "units": unit,
                    });
                    Ok(emit(ctx, v, text))
                }
            }
        }
        Command::Equiv { left, right } => {
            match (class_of(parse_literal(&left)?)?, class_of(parse_literal(&right)?)?) {
                (Either::F(a), Either::F(b)) => {
                    let eq = a == b;
                    let text = format!("{}\n", if eq { "equivalent" } else { "not equivalent" });
                    Ok(emit(ctx, json!({"equivalent": eq, "left": a.to_string(), "right": b.to_string()}), text))
                }
                (Either::P(a), Either::P(b)) => {
                    let (na, nb) = (a.normal_form(), b.normal_form());
                    let eq = na == nb;
                    let text = format!(
                        "{}\nnormal forms: {na} and {nb}\ncf-equal: {}, k-equal: {}, equal: {}\n",
                        if eq { "equivalent" } else { "not equivalent" },
                        a.cf_equal(&b),
                        a.k_equal(&b),
                        a.equal(&b)
                    );
                    let v = json!({
                        "equivalent": eq,
                        "left": na.to_string(),
                        "right": nb.to_string(),
                        "cf_equal": a.cf_equal(&b),
                        "k_equal": a.k_equal(&b),
                        "equal": a.equal(&b),
                    });
                    Ok(emit(ctx, v, text))
                }
                _ => Err(Failure::Usage("equiv needs two FCFs or two PCFs".into())),
            }
        }
        Command::Eval { input, count } => {
            let p = match parse_literal(&read_input(input, stdin)?)? {
                Literal::Pcf(p) => p,
                Literal::Fcf(f) => Pcf::new(f.quotients().to_vec(), vec![RingElem::zero()])?,
                other => return Err(Failure::Usage(format!("expected a continued fraction, got {other}"))),
            };
            let mut text = String::new();
            let mut arr = Vec::new();
            for n in 1..=count {
                let c = p.convergent(n)?;
                let (_, d) = ctx.point(&c);
                text += &format!("C_{n} = {d}\n");
                arr.push(json!({"n": n, "value": d}));
            }
            Ok(emit(ctx, json!({"convergents": arr}), text))
        }
        Command::KernelCheck { input, variant, alpha, exceptions, amalgam } => {
            if amalgam {
                let rep = amalgam_relations()?;
                let mut text = String::new();
                for (name, ok) in &rep.checks {
                    text += &format!("{} {name}\n", if *ok { "ok  " } else { "FAIL" });
                }
                text += &format!("all pass: {}\n", rep.all_pass());
                return Ok(emit(ctx, rep.to_json(), text));
            }
            if exceptions {
                let mut text = String::new();
                let mut arr = Vec::new();
                for e in exception_table() {
                    let cert = six_term_kernel(&e.x, &e.variant)?;
                    text += &format!("{} (norm {}, {}): {} {}\n", e.label, e.norm, e.variant.name(), cert.word, cert.verdict.as_str());
                    let mut v = cert.to_json();
                    v["label"] = json!(e.label);
                    v["norm"] = json!(e.norm);
                    v["variant"] = json!(e.variant.name());
                    arr.push(v);
                }
                return Ok(emit(ctx, json!({"exceptions": arr}), text));
            }
            let raw = read_input(input, stdin)?;
            let cert = match variant {
                None => match parse_literal(&raw)? {
                    Literal::Fcf(f) => KernelCertificate::for_word(f),
                    other => return Err(Failure::Usage(format!("expected a word [c1, ...], got {other}"))),
                },
                Some(v) => {
                    let x = parse_element(&raw)?;
                    let var = match v {
                        VariantArg::Inverse => Variant::Inverse,
                        VariantArg::Four => Variant::Four,
                        VariantArg::Three => Variant::Three,
                        VariantArg::Alpha => {
                            let a = alpha.ok_or_else(|| Failure::Usage("--variant alpha needs --alpha".into()))?;
                            Variant::Alpha(parse_element(&a)?)
                        }
                    };
                    six_term_kernel(&x, &var)?
                }
            };
            let text = format!("word: {}\nimage: {}\nverdict: {}\n", cert.word, cert.image, cert.verdict.as_str());
            Ok(emit(ctx, cert.to_json(), text))
        }
    }
}

fn quad_input(lit: Literal) -> Res<(QuadPoly, BaseField)> {
    match lit {
        Literal::Pcf(p) => Ok((p.quad(), p.base_field())),
        Literal::Matrix(m) => {
            let base = m.base_field()?;
            Ok((quad(&m), base))
        }
        Literal::Poly(q) => {
            let base = q.base_field()?;
            Ok((q, base))
        }
        other => Err(Failure::Usage(format!("expected a PCF, matrix or poly(A,B,C), got {other}"))),
    }
}

fn classify_text(ctx: &Ctx, rep: &ConvergenceReport) -> String {
    let mut text = format!("behavior: {}\ncase: {}\n", rep.behavior.as_str(), rep.case_tag.as_str());
    if let Some(l) = &rep.limit {
        text += &format!("limit: {}\n", ctx.point_text(l));
    }
    let m = &rep.majority;
    if let Some(w) = &m.witness {
        text += &format!("majority: {} of {} agree on {}\n", m.agree_count, m.total, ctx.point_text(w));
    }
    text
}

fn report_json(ctx: &Ctx, p: &Pcf, rep: &ConvergenceReport) -> Value {
    let mut v = to_json(rep, ctx.digits());
    let numeric: Vec<Value> = float_oracle(p, ctx.periods, ctx.bits.max(64))
        .iter()
        .map(|e| {
            json!({
                "j": e.j,
                "value": e.value.as_ref().map(|z| z.to_decimal(ctx.digits().min(20))),
                "step": e.step,
            })
        })
        .collect();
    v["numeric"] = json!({"periods": ctx.periods, "residues": numeric});
    v
}
