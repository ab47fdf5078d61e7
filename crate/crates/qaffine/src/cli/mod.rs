//! Command-line front end.
//!
//! Every command renders its report to a `String`; the binary prints it and maps
//! errors to exit codes (0 ok, 2 config, 3 not applicable, 4 inconsistency).

pub mod config;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::cartan::{check_invertibility_condition, classify, quantized_cartan, CartanData};
use crate::coproduct_lab::{
    delta_u_tensor, eval_module, relation_check, simplicity_check, specialize_ratio, specialize_u1, u_form,
    ModuleTable, RelationReport, Simplicity,
};
use crate::exact_arith::Var;
use crate::identities::{
    admissible_exponents, jing_identity, jing_identity_flipped, q_binom_identity, techun_vanishing, MAX_JING_S,
};
use crate::monomial::Monomial;
use crate::qchar_engine::{check_applicable, fm_expand, fuse, QcharError};
use crate::screening::{kernel_solve, QCharacter};

pub use config::{parse_config, seed_from_triples, Config};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config:{line}: {msg}")]
    Config { line: usize, msg: String },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    NotApplicable(String),
    #[error("{0}")]
    Inconsistent(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } | CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::NotApplicable(_) => 3,
            CliError::Inconsistent(_) => 4,
        }
    }
}

impl From<QcharError> for CliError {
    fn from(e: QcharError) -> Self {
        match e {
            QcharError::NotApplicable(_) => CliError::NotApplicable(e.to_string()),
            QcharError::NotDominant(_) => CliError::Usage(e.to_string()),
            _ => CliError::Inconsistent(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "qaffine", version, about = "q-characters, fusion and Drinfeld coproduct tables")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Symmetrizer, type, quantized Cartan matrix and its determinant.
    Cartan { config: PathBuf },
    /// Truncated q-character of a dominant seed.
    Qchar {
        config: PathBuf,
        /// Seed factor NODE:QEXP[:MULT]; repeat for products. Overrides the config.
        #[arg(long, value_parser = parse_factor)]
        seed: Vec<[i64; 3]>,
        #[arg(long)]
        depth: Option<i64>,
        /// Also solve the kernel equations and compare.
        #[arg(long)]
        oracle: bool,
        /// Append the coweight record to each monomial.
        #[arg(long)]
        show_k: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Multiplicities of simple constituents in a product of two simples.
    Fuse {
        config: PathBuf,
        #[arg(long, value_parser = parse_factor)]
        seed: Vec<[i64; 3]>,
        #[arg(long, value_parser = parse_factor)]
        seed2: Vec<[i64; 3]>,
        #[arg(long)]
        depth: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Tables for the tensor square of sl2 evaluation modules.
    Tensor {
        /// Specialize a = q^K b after u = 1.
        #[arg(long, allow_hyphen_values = true)]
        ab_qpow: Option<i32>,
        /// Flip one sign in the tensor table and report the relation failures.
        #[arg(long)]
        corrupt: bool,
    },
    /// Vanishing checks for the q-binomial, Jing and geometric identities.
    Identities {
        #[arg(long, default_value_t = 4)]
        max_s: u32,
    },
}

fn parse_factor(s: &str) -> Result<[i64; 3], String> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |p: &str| p.trim().parse::<i64>().map_err(|e| format!("{p:?}: {e}"));
    match parts.as_slice() {
        [n, k] => Ok([num(n)?, num(k)?, 1]),
        [n, k, m] => Ok([num(n)?, num(k)?, num(m)?]),
        _ => Err(format!("expected NODE:QEXP[:MULT], got {s:?}")),
    }
}

pub fn load_config(path: &std::path::Path) -> Result<Config, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

/// Default truncation depth when neither the config nor the flags give one.
pub const DEFAULT_DEPTH: i64 = 4;

fn pick_seed(cd: &CartanData, flag: &[[i64; 3]], cfg: Option<&Monomial>, key: &str) -> Result<Monomial, CliError> {
    if !flag.is_empty() {
        return seed_from_triples(cd.n, flag).map_err(CliError::Usage);
    }
    cfg.cloned()
        .ok_or_else(|| CliError::Usage(format!("no {key} given in the config or on the command line")))
}

pub fn cmd_cartan(cfg: &Config) -> String {
    let cd = &cfg.cartan;
    let qc = quantized_cartan(cd);
    let mut out = String::new();
    let row = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    for (i, r) in cd.c.iter().enumerate() {
        let _ = writeln!(out, "C[{}]\t{}", i + 1, row(r));
    }
    let _ = writeln!(out, "symmetrizer\t{}", row(&cd.r));
    let _ = writeln!(out, "type\t{}", classify(cd));
    for (i, r) in qc.entries.iter().enumerate() {
        let cells: Vec<String> = r.iter().map(|p| p.to_string()).collect();
        let _ = writeln!(out, "C(z)[{}]\t{}", i + 1, cells.join("\t"));
    }
    let _ = writeln!(out, "det\t{}", qc.det);
    let verdict = if check_invertibility_condition(cd) { "holds" } else { "fails" };
    let _ = writeln!(out, "invertibility_condition\t{verdict}");
    let fm = match check_applicable(cd) {
        Ok(()) => "applicable".to_string(),
        Err(e) => format!("not applicable: {e}"),
    };
    let _ = writeln!(out, "fm_expansion\t{fm}");
    out
}

fn render_character(cd: &CartanData, seed: &Monomial, chi: &QCharacter, show_k: bool, format: Format) -> String {
    let ty = classify(cd).to_string();
    match format {
        Format::Text => {
            let mut out = format!(
                "# type: {ty}\n# depth: {}\n# seed: {}\n# terms: {}\n",
                chi.truncation_depth(),
                seed.render(false),
                chi.len()
            );
            for l in chi.render_lines(show_k) {
                out.push_str(&l);
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let terms: Vec<_> = chi
                .terms()
                .map(|(m, c)| json!({"coefficient": c.to_string(), "monomial": m.render(show_k)}))
                .collect();
            let v = json!({
                "type": ty,
                "depth": chi.truncation_depth(),
                "seed": seed.render(false),
                "terms": terms,
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
    }
}

pub fn cmd_qchar(
    cfg: &Config,
    seed: &[[i64; 3]],
    depth: Option<i64>,
    oracle: bool,
    show_k: bool,
    format: Format,
) -> Result<String, CliError> {
    let cd = &cfg.cartan;
    let seed = pick_seed(cd, seed, cfg.seed.as_ref(), "seed")?;
    let d = depth.or(cfg.depth).unwrap_or(DEFAULT_DEPTH);
    let chi = fm_expand(&seed, d, cd)?;
    if oracle {
        let k = kernel_solve(&seed, d, cd).map_err(|e| CliError::Inconsistent(format!("oracle failed: {e}")))?;
        if k != chi {
            return Err(CliError::Inconsistent(format!(
                "oracle mismatch: expansion has {} terms, kernel solution {}",
                chi.len(),
                k.len()
            )));
        }
    }
    let mut out = render_character(cd, &seed, &chi, show_k, format);
    if oracle && format == Format::Text {
        out.push_str("# oracle: agrees\n");
    }
    Ok(out)
}

pub fn cmd_fuse(
    cfg: &Config,
    seed: &[[i64; 3]],
    seed2: &[[i64; 3]],
    depth: Option<i64>,
    format: Format,
) -> Result<String, CliError> {
    let cd = &cfg.cartan;
    let m1 = pick_seed(cd, seed, cfg.seed.as_ref(), "seed")?;
    let m2 = if seed2.is_empty() && cfg.seed2.is_none() {
        Monomial::one(cd.n)
    } else {
        pick_seed(cd, seed2, cfg.seed2.as_ref(), "seed2")?
    };
    let d = depth.or(cfg.depth).unwrap_or(DEFAULT_DEPTH);
    let table = fuse(&m1, &m2, d, cd)?;
    if let Some((m, c)) = table.iter().find(|(_, c)| c.sign() == num_bigint::Sign::Minus) {
        return Err(CliError::Inconsistent(format!("negative multiplicity {c} at {}", m.render(false))));
    }
    Ok(match format {
        Format::Text => {
            let mut out = format!(
                "# type: {}\n# depth: {d}\n# seeds: {} | {}\n",
                classify(cd),
                m1.render(false),
                m2.render(false)
            );
            for (m, c) in &table {
                let _ = writeln!(out, "{c}\t{}", m.render(false));
            }
            out
        }
        Format::Json => {
            let rows: Vec<_> = table
                .iter()
                .map(|(m, c)| json!({"multiplicity": c.to_string(), "monomial": m.render(false)}))
                .collect();
            let v = json!({"depth": d, "seeds": [m1.render(false), m2.render(false)], "constituents": rows});
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
    })
}

fn relation_lines(out: &mut String, name: &str, rep: &RelationReport) {
    let total = rep.instances.len();
    let bad = rep.failures();
    let verdict = if rep.all_pass() { "pass" } else { "FAIL" };
    let _ = writeln!(
        out,
        "relations\t{name}\t{verdict}\t{}/{total}\tweights {}",
        total - bad.len(),
        if rep.weights_ok { "ok" } else { "broken" }
    );
    for f in bad {
        let _ = writeln!(out, "failure\t{name}\t{:?}\tr={}\ts={}", f.relation, f.r, f.s);
    }
}

fn simplicity_line(t: &ModuleTable) -> String {
    match simplicity_check(t) {
        Simplicity::Simple => "simple".into(),
        Simplicity::Submodule {
            generator,
            dim,
            l_weight,
            ..
        } => {
            let gen: Vec<String> = generator
                .iter()
                .zip(&t.labels)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, l)| format!("({c})*{l}"))
                .collect();
            let iso = match l_weight {
                Some(w) if w.is_one() => " isomorphic to L(1)".to_string(),
                Some(w) => format!(" with l-weight {w}"),
                None => String::new(),
            };
            format!("submodule of dimension {dim} generated by {}{iso}", gen.join(" + "))
        }
    }
}

pub fn cmd_tensor(ab_qpow: Option<i32>, corrupt: bool) -> Result<String, CliError> {
    let inc = |e: crate::coproduct_lab::CoproductError| CliError::Inconsistent(e.to_string());
    let v = eval_module(Var::A);
    let w = eval_module(Var::B);
    let t = delta_u_tensor(&v, &w).map_err(inc)?;
    let f = u_form(&t).map_err(inc)?;
    let s = specialize_u1(&f).map_err(inc)?;
    let mut out = String::new();
    for (title, table) in [
        ("evaluation module a", &v),
        ("evaluation module b", &w),
        ("tensor product", &t),
        ("u-form", &f.table),
        ("specialization u = 1", &s),
    ] {
        let _ = writeln!(out, "## {title}");
        out.push_str(&table.render());
    }
    let mut checks: Vec<(String, ModuleTable)> =
        vec![("tensor".into(), t.clone()), ("u-form".into(), f.table.clone()), ("specialized".into(), s.clone())];
    if let Some(k) = ab_qpow {
        let sp = specialize_ratio(&s, k).map_err(inc)?;
        let _ = writeln!(out, "## specialization a = q^{k} b");
        out.push_str(&sp.render());
        checks.push((format!("a=q^{k}b"), sp));
    }
    let _ = writeln!(out, "## reports");
    let mut broken = false;
    for (name, table) in &checks {
        let rep = relation_check(table, -3..=3);
        broken |= !rep.all_pass();
        relation_lines(&mut out, name, &rep);
    }
    for (name, table) in &checks {
        let _ = writeln!(out, "simplicity\t{name}\t{}", simplicity_line(table));
    }
    if corrupt {
        let rep = relation_check(&t.corrupted(), -3..=3);
        relation_lines(&mut out, "corrupted", &rep);
    }
    if broken {
        return Err(CliError::Inconsistent(format!("{out}relation check failed on an uncorrupted table")));
    }
    Ok(out)
}

pub fn cmd_identities(max_s: u32) -> Result<String, CliError> {
    if max_s > MAX_JING_S {
        return Err(CliError::Usage(format!(
            "max_s = {max_s} exceeds {MAX_JING_S}: the Jing sum has s! terms of degree s(s+1)/2"
        )));
    }
    let mut out = String::new();
    let mut ok = true;
    let mut line = |name: &str, s: u32, param: String, pass: bool, out: &mut String| {
        ok &= pass;
        let _ = writeln!(out, "{name}\ts={s}\t{param}\t{}", if pass { "pass" } else { "FAIL" });
    };
    for s in 1..=max_s {
        for p in admissible_exponents(s) {
            line("q_binom", s, format!("p'={p}"), q_binom_identity(s, p).is_zero(), &mut out);
        }
        let p = s as i64 + 1;
        line("q_binom_control", s, format!("p'={p}"), !q_binom_identity(s, p).is_zero(), &mut out);
    }
    for s in 2..=max_s {
        let z = jing_identity(s).map_err(|e| CliError::Usage(e.to_string()))?.is_zero();
        line("jing", s, "-".into(), z, &mut out);
        let c = jing_identity_flipped(s, 0).map_err(|e| CliError::Usage(e.to_string()))?;
        line("jing_control", s, "flip=0".into(), !c.is_zero(), &mut out);
    }
    for s in 1..=max_s {
        for ri in 1..=3i64 {
            if s == 1 && ri > 1 {
                continue;
            }
            let bij = ri * (1 - s as i64);
            let v = techun_vanishing(s, bij).map_err(|e| CliError::Usage(e.to_string()))?;
            line("techun", s, format!("B={bij}"), v.is_zero(), &mut out);
        }
    }
    if !ok {
        return Err(CliError::Inconsistent(out));
    }
    Ok(out)
}

/// Runs a parsed command line and returns the report.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Cartan { config } => Ok(cmd_cartan(&load_config(config)?)),
        Command::Qchar {
            config,
            seed,
            depth,
            oracle,
            show_k,
            format,
        } => cmd_qchar(&load_config(config)?, seed, *depth, *oracle, *show_k, *format),
        Command::Fuse {
            config,
            seed,
            seed2,
            depth,
            format,
        } => cmd_fuse(&load_config(config)?, seed, seed2, *depth, *format),
        Command::Tensor { ab_qpow, corrupt } => cmd_tensor(*ab_qpow, *corrupt),
        Command::Identities { max_s } => cmd_identities(*max_s),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> Config {
        parse_config(text).unwrap()
    }

    #[test]
    fn cartan_reports_det() {
        let out = cmd_cartan(&cfg("cartan = [[2, -2], [-2, 2]]\nr = [2, 2]\n"));
        assert!(out.contains("det\tz^4 - z^2 - z^-2 + z^-4\n"), "{out}");
        let out = cmd_cartan(&cfg("cartan = [[2]]\n"));
        assert!(out.contains("type\tfinite\n"));
        assert!(out.contains("det\tz + z^-1\n"));
    }

    #[test]
    fn qchar_line_counts() {
        let out = cmd_qchar(&cfg("cartan = [[2]]\nseed = [[1, 0, 1]]\n"), &[], Some(2), true, false, Format::Text).unwrap();
        assert_eq!(out.lines().filter(|l| !l.starts_with('#')).count(), 2, "{out}");
        let a2 = cfg("cartan = [[2, -1], [-1, 2]]\nseed = [[1, 0, 1]]\n");
        let out = cmd_qchar(&a2, &[], Some(3), true, false, Format::Text).unwrap();
        assert_eq!(out.lines().filter(|l| !l.starts_with('#')).count(), 3, "{out}");
    }

    #[test]
    fn not_applicable_exit_code() {
        let c = cfg("cartan = [[2, -2], [-2, 2]]\nr = [1, 1]\nseed = [[1, 0, 1]]\n");
        let e = cmd_qchar(&c, &[], Some(2), false, false, Format::Text).unwrap_err();
        assert_eq!(e.exit_code(), 3);
    }

    #[test]
    fn fuse_outputs() {
        let c = cfg("cartan = [[2]]\ndepth = 6\n");
        let generic = cmd_fuse(&c, &[[1, 0, 1]], &[[1, 5, 1]], None, Format::Text).unwrap();
        assert_eq!(generic.lines().filter(|l| !l.starts_with('#')).count(), 1);
        let special = cmd_fuse(&c, &[[1, 0, 1]], &[[1, 2, 1]], None, Format::Text).unwrap();
        let rows: Vec<&str> = special.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(rows.len(), 2);
        assert!(rows.contains(&"1\t1"), "{special}");
        let unit = cmd_fuse(&c, &[[1, 0, 1]], &[], None, Format::Text).unwrap();
        assert!(unit.ends_with("1\tY{1,q^0}\n"), "{unit}");
    }

    #[test]
    fn identities_limits() {
        assert!(cmd_identities(3).unwrap().lines().all(|l| l.ends_with("pass")));
        assert_eq!(cmd_identities(9).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn factor_parser() {
        assert_eq!(parse_factor("1:-2"), Ok([1, -2, 1]));
        assert_eq!(parse_factor("2:3:2"), Ok([2, 3, 2]));
        assert!(parse_factor("x").is_err());
    }
}
