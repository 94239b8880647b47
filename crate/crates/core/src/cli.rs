//! Command-line front end. Every command prints one JSON document.
//!
//! Exit codes: 0 on success, 1 when a verification finds a failure, 2 on
//! usage errors and malformed input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::blm::{self, ASpec, Suite, TruncatedFamily};
use crate::identities::{self, REGISTRY};
use crate::qschur::{formula_product, generator_key, left_mul, GeneratorShape, Oracle, QElement};
use crate::superindex::{count_matrices, SuperMatrix};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "QSCHUR_CACHE_DIR";

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "qschur", version, about = "Exact products in the queer Schur superalgebra Q(n,r)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Cache directory for structure-constant tables and products.
    #[arg(long, global = true, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,
    /// Skip the cache entirely.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads for the verification suites.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
    /// Write the JSON here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// φ_X φ_A for two basis keys of Q(n,r).
    Product {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Left key as {"even": [[..]], "odd": [[..]]}.
        #[arg(long)]
        x: String,
        /// Right key.
        #[arg(long)]
        a: String,
        #[arg(long, value_enum, default_value = "oracle")]
        engine: Engine,
    },
    /// All products of one generator family with the basis of Q(n,r).
    StructureConstants {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        shape: GeneratorShape,
        #[arg(long, value_enum, default_value = "formula")]
        engine: Engine,
    },
    /// The basis keys M(n,r) in canonical order.
    Basis {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: VerifySuite,
        /// Restrict the identity suite to one registry entry.
        #[arg(long)]
        name: Option<String>,
        /// List the identity registry instead of running it.
        #[arg(long)]
        list: bool,
        #[arg(long, visible_alias = "nmax", default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        rmax: usize,
        /// Largest |A| in the PBW check; defaults to rmax.
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// The truncated family A(A, j) and optionally its triangular expansion.
    Realize {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        rmax: usize,
        #[arg(long)]
        matrix: String,
        /// Exponent vector as a JSON array; zero by default.
        #[arg(long)]
        j: Option<String>,
        #[arg(long)]
        express: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Engine {
    Formula,
    Oracle,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VerifySuite {
    #[value(alias = "identities")]
    Section3,
    Products,
    Relations,
    BlmBasis,
    Triangular,
    Pi,
}

impl VerifySuite {
    fn name(&self) -> &'static str {
        match self {
            VerifySuite::Section3 => "section3",
            VerifySuite::Products => "products",
            VerifySuite::Relations => "relations",
            VerifySuite::BlmBasis => "blm-basis",
            VerifySuite::Triangular => "triangular",
            VerifySuite::Pi => "pi",
        }
    }
}

/// A command's failure mode.
enum Fail {
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail::Usage(e.to_string())
    }
}

/// Result of a command: the JSON text and whether verification passed.
struct Reply {
    body: String,
    passed: bool,
}

impl Reply {
    fn ok(v: &impl Serialize) -> Result<Self, Fail> {
        Ok(Reply { body: serde_json::to_string(v)?, passed: true })
    }

    fn verdict(v: &impl Serialize, passed: bool) -> Result<Self, Fail> {
        Ok(Reply { body: serde_json::to_string(v)?, passed })
    }
}

fn parse_matrix(s: &str, what: &str) -> Result<SuperMatrix, Fail> {
    serde_json::from_str(s).map_err(|e| Fail::Usage(format!("malformed {what}: {e}")))
}

/// On-disk cache of JSON replies, keyed by a digest of the request.
pub struct Cache {
    dir: PathBuf,
}

static TMP_COUNTER: AtomicUsize = AtomicUsize::new(0);

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// sha256 over (version, n, r, operation, canonical input).
    pub fn key(n: usize, r: usize, op: &str, input: &str) -> String {
        let mut h = Sha256::new();
        for part in [VERSION, &n.to_string(), &r.to_string(), op, input] {
            h.update(part.as_bytes());
            h.update([0u8]);
        }
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Option<String> {
        fs::read_to_string(self.path(key)).ok()
    }

    /// Write through a temporary file and rename, so readers never see a
    /// partial entry.
    pub fn put(&self, key: &str, body: &str) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let tmp = self.dir.join(format!(".{key}.{}.{}", std::process::id(), TMP_COUNTER.fetch_add(1, Ordering::Relaxed)));
        fs::write(&tmp, body)?;
        fs::rename(&tmp, self.path(key))
    }
}

fn default_cache_dir() -> Option<PathBuf> {
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| Path::new(&h).join(".cache")))?;
    Some(base.join("qschur"))
}

fn cached(cache: Option<&Cache>, key: String, compute: impl FnOnce() -> Result<Reply, Fail>) -> Result<Reply, Fail> {
    if let Some(body) = cache.and_then(|c| c.get(&key)) {
        return Ok(Reply { body, passed: true });
    }
    let reply = compute()?;
    if let Some(c) = cache {
        // a failed write only costs a recomputation next time
        let _ = c.put(&key, &reply.body);
    }
    Ok(reply)
}

fn product(n: usize, r: usize, x: &str, a: &str, engine: Engine, cache: Option<&Cache>) -> Result<Reply, Fail> {
    let (xm, am) = (parse_matrix(x, "--x")?, parse_matrix(a, "--a")?);
    xm.check_in(n, r)?;
    am.check_in(n, r)?;
    let input = serde_json::to_string(&(&xm, &am, engine))?;
    let key = Cache::key(n, r, "product", &input);
    let run = || -> Result<Reply, Fail> {
        match engine {
            Engine::Oracle => Reply::ok(&json!({"engine": engine, "result": Oracle::new().product(&xm, &am)?})),
            Engine::Formula => Reply::ok(&json!({"engine": engine, "result": formula_product(&xm, &am)?})),
            Engine::Both => {
                let o = Oracle::new().product(&xm, &am)?;
                let f = formula_product(&xm, &am)?;
                let diff = o.sub(&f)?;
                let agree = diff.is_zero();
                Reply::verdict(&json!({"engine": engine, "oracle": o, "formula": f, "diff": diff, "agree": agree}), agree)
            }
        }
    };
    // disagreements are never cached
    if engine == Engine::Both {
        return run();
    }
    cached(cache, key, run)
}

#[derive(Serialize)]
struct Row {
    h: usize,
    #[serde(rename = "A")]
    a: SuperMatrix,
    result: QElement,
}

fn structure_constants(n: usize, r: usize, shape: GeneratorShape, engine: Engine, cache: Option<&Cache>) -> Result<Reply, Fail> {
    if n == 0 {
        return Err(Fail::Usage("n must be at least 1".into()));
    }
    let key = Cache::key(n, r, "structure-constants", &format!("{shape}/{engine:?}"));
    let oracle = Oracle::new();
    let compute = || -> Result<Reply, Fail> {
        let mut rows = Vec::new();
        let mut agree = true;
        for a in SuperMatrix::all(n, r) {
            for h in shape.rows(n) {
                if generator_key(shape, h, &a.ro()).is_err() {
                    continue;
                }
                let result = match engine {
                    Engine::Formula => left_mul(shape, h, &a)?,
                    Engine::Oracle => oracle.product(&generator_key(shape, h, &a.ro())?, &a)?,
                    Engine::Both => {
                        let f = left_mul(shape, h, &a)?;
                        agree &= f == oracle.product(&generator_key(shape, h, &a.ro())?, &a)?;
                        f
                    }
                };
                rows.push(Row { h, a: a.clone(), result });
            }
        }
        Reply::verdict(&json!({"n": n, "r": r, "shape": shape.name(), "rows": rows}), agree)
    };
    if engine == Engine::Both {
        return compute();
    }
    cached(cache, key, compute)
}

fn verify(suite: VerifySuite, name: Option<&str>, list: bool, n: usize, rmax: usize, max_size: Option<usize>) -> Result<Reply, Fail> {
    if n == 0 {
        return Err(Fail::Usage("n must be at least 1".into()));
    }
    let label = suite.name();
    match suite {
        VerifySuite::Section3 => {
            if list {
                let items: Vec<Value> = REGISTRY.iter().map(|i| json!({"name": i.name, "statement": i.statement})).collect();
                return Reply::ok(&json!({"suite": label, "identities": items}));
            }
            let chosen: Vec<_> = match name {
                Some(s) => vec![identities::lookup(s).ok_or_else(|| Fail::Usage(format!("no identity named {s}")))?],
                None => REGISTRY.iter().collect(),
            };
            let tallies: Vec<_> = chosen.into_iter().map(|id| identities::run_identity(id, n, rmax, 5)).collect();
            let cases: usize = tallies.iter().map(|t| t.cases).sum();
            let failures: usize = tallies.iter().map(|t| t.failures + t.inadmissible).sum();
            Reply::verdict(&json!({"suite": label, "cases": cases, "failures": failures, "identities": tallies}), failures == 0)
        }
        VerifySuite::Products => {
            let oracle = Oracle::new();
            let (mut cases, mut failed) = (0usize, Vec::new());
            for r in 0..=rmax {
                for a in SuperMatrix::all(n, r) {
                    for shape in GeneratorShape::ALL {
                        for h in shape.rows(n) {
                            let Ok(x) = generator_key(shape, h, &a.ro()) else { continue };
                            cases += 1;
                            if left_mul(shape, h, &a)? != oracle.product(&x, &a)? {
                                failed.push(json!({"shape": shape.name(), "h": h, "A": a}));
                            }
                        }
                    }
                }
            }
            let f = failed.len();
            Reply::verdict(&json!({"suite": label, "cases": cases, "failures": f, "failed": failed}), f == 0)
        }
        VerifySuite::Relations => {
            let reports: Vec<_> = [Suite::Level, Suite::Family].into_iter().map(|s| blm::check_relations(s, n, rmax)).collect();
            let cases: usize = reports.iter().map(|r| r.instances).sum();
            let failures: usize = reports.iter().map(|r| r.failures.len()).sum();
            Reply::verdict(&json!({"suite": label, "cases": cases, "failures": failures, "reports": reports}), failures == 0)
        }
        VerifySuite::BlmBasis => {
            let levels: Vec<Value> = (0..=rmax)
                .map(|r| {
                    let b = blm::blm_basis_rank(n, r);
                    json!({"r": r, "size": b.size, "rank": b.rank, "dim": b.dim, "basis": b.is_basis()})
                })
                .collect();
            let failures = levels.iter().filter(|v| v["basis"] != Value::Bool(true)).count();
            Reply::verdict(&json!({"suite": label, "cases": levels.len(), "failures": failures, "levels": levels}), failures == 0)
        }
        VerifySuite::Triangular => {
            let oracle = Oracle::new();
            let mut rows = Vec::new();
            let mut failures = 0;
            for a in SuperMatrix::all_strict(n, rmax) {
                if blm::filtration_degree(&a) > rmax {
                    continue;
                }
                let t = blm::triangular_product(&a, rmax, &oracle)?;
                failures += usize::from(!t.triangular);
                rows.push(json!({"A": a, "sign": t.sign(), "lower_terms": t.lower.len(), "triangular": t.triangular}));
            }
            Reply::verdict(&json!({"suite": label, "cases": rows.len(), "failures": failures, "matrices": rows}), failures == 0)
        }
        VerifySuite::Pi => {
            let rep = blm::pi_images_check(n, rmax, max_size.unwrap_or(rmax));
            let failures = rep.relations.failures.len() + usize::from(!rep.pbw.independent());
            let cases = rep.relations.instances + rep.pbw.count;
            Reply::verdict(&json!({"suite": label, "cases": cases, "failures": failures, "report": rep}), failures == 0)
        }
    }
}

fn realize(n: usize, rmax: usize, matrix: &str, j: Option<&str>, express: bool) -> Result<Reply, Fail> {
    let m = parse_matrix(matrix, "--matrix")?;
    if m.n() != n {
        return Err(Fail::Usage(format!("matrix is {}×{}, expected n = {n}", m.n(), m.n())));
    }
    let j: Vec<usize> = match j {
        Some(s) => serde_json::from_str(s).map_err(|e| Fail::Usage(format!("malformed --j: {e}")))?,
        None => vec![0; n],
    };
    let spec = ASpec::new(m, j)?;
    let family = TruncatedFamily::truncated(&spec.matrix, &spec.j, rmax);
    let mut out = json!({"n": n, "rmax": rmax, "spec": spec, "family": family});
    let mut passed = true;
    if express {
        let t = blm::triangular_product(&spec.matrix, rmax, &Oracle::new())?;
        passed = t.triangular;
        out["triangular"] = serde_json::to_value(&t)?;
    }
    Reply::verdict(&out, passed)
}

fn dispatch(cli: &Cli) -> Result<Reply, Fail> {
    let cache = if cli.no_cache { None } else { cli.cache_dir.clone().or_else(default_cache_dir).map(Cache::new) };
    let cache = cache.as_ref();
    match &cli.command {
        Command::Product { n, r, x, a, engine } => product(*n, *r, x, a, *engine, cache),
        Command::StructureConstants { n, r, shape, engine } => structure_constants(*n, *r, *shape, *engine, cache),
        Command::Basis { n, r } => {
            let basis = SuperMatrix::all(*n, *r);
            Reply::ok(&json!({"n": n, "r": r, "dim": count_matrices(*n, *r) as u64, "basis": basis}))
        }
        Command::Verify { suite, name, list, n, rmax, max_size } => verify(*suite, name.as_deref(), *list, *n, *rmax, *max_size),
        Command::Realize { n, rmax, matrix, j, express } => realize(*n, *rmax, matrix, j.as_deref(), *express),
    }
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    if let Some(t) = cli.threads {
        // the global pool can only be set once per process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t as usize).build_global();
    }
    match dispatch(&cli) {
        Ok(reply) => {
            let written = match &cli.output {
                Some(p) => fs::write(p, format!("{}\n", reply.body)),
                None => writeln!(out, "{}", reply.body),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
            if reply.passed {
                0
            } else {
                1
            }
        }
        Err(Fail::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["qschur", "--no-cache"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn basis_n1_r1() {
        let (code, out, _) = call(&["basis", "--n", "1", "--r", "1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["basis"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["nonsense"]).0, 2);
        assert_eq!(call(&["product", "--n", "2", "--r", "1", "--x", "{bad", "--a", "{}"]).0, 2);
        assert_eq!(call(&["verify", "--suite", "section3", "--name", "no-such-identity"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn cache_keys_separate_inputs() {
        assert_ne!(Cache::key(2, 1, "product", "a"), Cache::key(2, 1, "product", "b"));
        assert_ne!(Cache::key(2, 1, "product", "a"), Cache::key(2, 2, "product", "a"));
        assert_eq!(Cache::key(2, 1, "product", "a").len(), 64);
    }
}
