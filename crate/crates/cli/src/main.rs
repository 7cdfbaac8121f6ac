use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::Context;
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use zelkl_core::branching::{ext_dims, proof_trace, run_random_suite, ExtMode, SuiteConfig};
use zelkl_core::coxeter::{enumerate_wtilde, Permutation};
use zelkl_core::grothendieck::{
    bz_layers, decompose_irreducible, ep_pairing, regular_block, verify_kl_identity, GrothendieckVector,
    RegularBlock,
};
use zelkl_core::klpoly::{store, KlCache, KlTable, RTable};
use zelkl_core::zelevinsky::{Multisegment, Segment, Side};
use zelkl_core::{Error, Limits};

const EXIT_VERIFICATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(name = "zelkl", version, about = "Kazhdan-Lusztig polynomials, multisegments and branching proof traces")]
struct Cli {
    /// Indent the JSON payload.
    #[arg(long, global = true)]
    pretty: bool,

    /// Directory holding persisted KL tables (overrides ZELKL_CACHE_DIR).
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kazhdan-Lusztig polynomial P_{x,w} in S_n.
    Kl {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        x: String,
        #[arg(long)]
        w: String,
    },
    /// Build (or load) the full KL table of S_n and persist it to the cache directory.
    KlTable {
        #[arg(long)]
        n: usize,
        /// Check the inversion identity on every pair.
        #[arg(long)]
        verify: bool,
        /// Include every nonzero entry in the payload.
        #[arg(long)]
        entries: bool,
    },
    /// Alternating-sum identity of KL values at q = 1 over S_n.
    VerifyIdentity {
        #[arg(long)]
        n: usize,
    },
    /// Decompose the irreducible labelled by w in a regular block of S_n.
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        w: String,
        /// Comma-separated a_1 > ... > a_n (default n-1, ..., 0).
        #[arg(long, requires = "b", allow_hyphen_values = true)]
        a: Option<String>,
        /// Comma-separated b_1 > ... > b_n (default 2n-1, ..., n).
        #[arg(long, requires = "a", allow_hyphen_values = true)]
        b: Option<String>,
    },
    /// Euler-Poincare pairing of two Grothendieck vectors.
    Ep {
        #[arg(long, allow_hyphen_values = true)]
        v1: String,
        #[arg(long, allow_hyphen_values = true)]
        v2: String,
        /// Skip the n(v1) = n(v2) + 1 check.
        #[arg(long)]
        formal: bool,
    },
    /// Stratification data W~ of S_{n+1}.
    Strata {
        #[arg(long)]
        n: usize,
    },
    /// Derivative of a single segment.
    Derive {
        #[arg(long, allow_hyphen_values = true)]
        segment: String,
        #[arg(long)]
        side: Side,
        #[arg(long)]
        i: usize,
        /// Apply the half twist of the shifted derivative.
        #[arg(long)]
        shifted: bool,
    },
    /// Filtration layers of the restriction of a product.
    Layers {
        #[arg(long, allow_hyphen_values = true)]
        outer: String,
        #[arg(long, allow_hyphen_values = true, default_value = "{}")]
        inner: String,
        #[arg(long)]
        side: Side,
    },
    /// Proof trace of the induction on L* for (m, m').
    Trace {
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        #[arg(long = "m-prime", allow_hyphen_values = true)]
        m_prime: String,
    },
    /// Ext profile of standard modules.
    Ext {
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        #[arg(long = "m-prime", allow_hyphen_values = true)]
        m_prime: String,
        #[arg(long, default_value = "branching")]
        mode: ExtMode,
    },
    /// Seeded randomized proof-trace suite.
    RandomTraces {
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A payload plus whether every check it reports passed.
struct Outcome {
    payload: Value,
    ok: bool,
}

impl Outcome {
    fn ok(payload: impl Serialize) -> anyhow::Result<Self> {
        Ok(Outcome {
            payload: serde_json::to_value(payload)?,
            ok: true,
        })
    }

    fn checked(payload: impl Serialize, ok: bool) -> anyhow::Result<Self> {
        Ok(Outcome {
            payload: serde_json::to_value(payload)?,
            ok,
        })
    }
}

struct Session {
    cache: KlCache,
    cache_dir: Option<PathBuf>,
}

impl Session {
    /// KL table of S_n, read from the cache directory when a complete copy is
    /// stored there.
    fn table(&self, n: usize) -> anyhow::Result<(Arc<KlTable>, Option<PathBuf>, bool)> {
        let Some(dir) = &self.cache_dir else {
            return Ok((self.cache.table(n)?, None, false));
        };
        let path = dir.join(store::cache_file_name(n));
        if path.exists() {
            let table = store::load(&path, self.cache.limits())
                .with_context(|| format!("reading {}", path.display()))?;
            if table.is_complete() {
                return Ok((self.cache.insert(table)?, Some(path), true));
            }
        }
        let table = self.cache.table(n)?;
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        store::save(&table, &path)?;
        Ok((table, Some(path), false))
    }
}

fn parse<T: std::str::FromStr<Err = Error>>(what: &str, text: &str) -> anyhow::Result<T> {
    text.parse::<T>().with_context(|| format!("invalid {what} {text:?}"))
}

fn parse_list(what: &str, text: &str) -> anyhow::Result<Vec<i64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Argument(format!("invalid {what} entry {t:?}")).into())
        })
        .collect()
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let cache_dir = cli.cache_dir.or_else(|| std::env::var_os("ZELKL_CACHE_DIR").map(PathBuf::from));
    let ctx = Session {
        cache: KlCache::new(Limits::default()),
        cache_dir,
    };
    match cli.command {
        Command::Kl { n, x, w } => {
            let x: Permutation = parse("permutation", &x)?;
            let w: Permutation = parse("permutation", &w)?;
            for p in [&x, &w] {
                if p.rank() != n {
                    return Err(Error::RankMismatch { left: p.rank(), right: n }.into());
                }
            }
            let (table, _, _) = ctx.table(n)?;
            let p = table.get(&x, &w)?;
            Outcome::ok(json!({
                "n": n,
                "x": x,
                "w": w,
                "polynomial": p.to_string(),
                "coefficients": p,
                "mu": table.mu(&x, &w)?.to_string(),
            }))
        }
        Command::KlTable { n, verify, entries } => {
            let (table, path, loaded) = ctx.table(n)?;
            let nonzero = table.nonzero_entries().count();
            let mut payload = json!({
                "n": n,
                "elements": table.elements().len(),
                "nonzero_entries": nonzero,
                "path": path,
                "loaded_from_cache": loaded,
            });
            let mut ok = true;
            if verify {
                table.check_invariants()?;
                let report = table.verify_inversion(&RTable::build(n, ctx.cache.limits())?);
                ok = report.passed();
                payload["verification"] = serde_json::to_value(&report)?;
            }
            if entries {
                payload["entries"] = table
                    .nonzero_entries()
                    .map(|(x, w, p)| json!({"x": x, "w": w, "polynomial": p.to_string()}))
                    .collect();
            }
            Outcome::checked(payload, ok)
        }
        Command::VerifyIdentity { n } => {
            ctx.table(n)?;
            let report = verify_kl_identity(n, &ctx.cache)?;
            let ok = report.passed();
            Outcome::checked(report, ok)
        }
        Command::Decompose { n, w, a, b } => {
            let block = match (a, b) {
                (Some(a), Some(b)) => regular_block(n, &parse_list("a", &a)?, &parse_list("b", &b)?, ctx.cache.limits())?,
                _ => RegularBlock::standard(n, ctx.cache.limits())?,
            };
            let w: Permutation = parse("permutation", &w)?;
            ctx.table(n)?;
            let v = decompose_irreducible(&block, &w, &ctx.cache)?;
            Outcome::ok(json!({
                "n": n,
                "a": block.a,
                "b": block.b,
                "w": w,
                "member": block.member(&w)?,
                "generic": block.member(&w)?.is_generic(),
                "vector": v.to_string(),
                "terms": v,
                "whittaker_dim": v.whittaker_dim()?,
            }))
        }
        Command::Ep { v1, v2, formal } => {
            let v1: GrothendieckVector = parse("vector", &v1)?;
            let v2: GrothendieckVector = parse("vector", &v2)?;
            let value = ep_pairing(&v1, &v2, !formal)?;
            Outcome::ok(json!({"v1": v1.to_string(), "v2": v2.to_string(), "ep": value}))
        }
        Command::Strata { n } => {
            let strata = enumerate_wtilde(n, ctx.cache.limits())?;
            let expected = n * (1..=n).product::<usize>();
            let lemma = strata.iter().all(|d| d.last_image_is_not_one());
            let consistent = strata.iter().all(|d| d.is_consistent());
            let ok = lemma && consistent && strata.len() == expected;
            Outcome::checked(
                json!({
                    "n": n,
                    "count": strata.len(),
                    "expected_count": expected,
                    "last_image_is_not_one": lemma,
                    "consistent": consistent,
                    "strata": strata,
                }),
                ok,
            )
        }
        Command::Derive { segment, side, i, shifted } => {
            let s: Segment = parse("segment", &segment)?;
            let d = s.derivative(side, i, shifted)?;
            Outcome::ok(json!({
                "segment": s,
                "side": side,
                "i": i,
                "shifted": shifted,
                "result": d.map_or_else(|| "empty".to_string(), |d| d.to_string()),
            }))
        }
        Command::Layers { outer, inner, side } => {
            let outer: Multisegment = parse("multisegment", &outer)?;
            let inner: Multisegment = parse("multisegment", &inner)?;
            Outcome::ok(json!({
                "outer": outer,
                "inner": inner,
                "side": side,
                "layers": bz_layers(&outer, &inner, side)?,
            }))
        }
        Command::Trace { m, m_prime } => {
            let m: Multisegment = parse("multisegment", &m)?;
            let m_prime: Multisegment = parse("multisegment", &m_prime)?;
            let trace = proof_trace(&m, &m_prime)?;
            let ok = trace.is_complete();
            Outcome::checked(trace, ok)
        }
        Command::Ext { m, m_prime, mode } => {
            let m: Multisegment = parse("multisegment", &m)?;
            let m_prime: Multisegment = parse("multisegment", &m_prime)?;
            Outcome::ok(ext_dims(&m, &m_prime, mode)?)
        }
        Command::RandomTraces { count, seed } => {
            let report = run_random_suite(count, seed, &SuiteConfig::default());
            let ok = report.all_passed();
            Outcome::checked(report, ok)
        }
    }
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::ResourceLimit { .. }) => EXIT_RESOURCE,
        Some(
            Error::Parse { .. }
            | Error::Argument(_)
            | Error::InvalidPermutation(_)
            | Error::InvalidSegment(_)
            | Error::RankMismatch { .. }
            | Error::Precondition(_),
        ) => EXIT_USAGE,
        _ => EXIT_VERIFICATION,
    }
}

fn render(value: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(value).expect("JSON values serialize")
    } else {
        value.to_string()
    }
}

/// Writes the payload to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}").and_then(|()| out.flush());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let pretty = cli.pretty;
    match run(cli) {
        Ok(outcome) => {
            emit(&render(&outcome.payload, pretty));
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFICATION)
            }
        }
        Err(err) => {
            let code = exit_code_for(&err);
            let payload = json!({"error": format!("{err:#}"), "exit_code": code});
            eprintln!("{}", render(&payload, pretty));
            ExitCode::from(code)
        }
    }
}
