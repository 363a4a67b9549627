//! Subcommands: thin adapters from arguments to engine calls and JSON.

use clap::{Args, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cluster_trop::compat::{
    compat_degree, compat_degree_symmetrizable, kac_multiplicity, ClusterMonomialProvider, FProvider, Stamped,
};
use cluster_trop::laurent::{x_names, Laurent};
use cluster_trop::pathalg::Oracle;
use cluster_trop::quiver::ExchangeMatrix;
use cluster_trop::seed::{search_variable, ClusterSeed, SearchTarget};
use cluster_trop::tropical::{reach_search, walk_witness, DimProvider, MutationWord, SearchOutcome, Witness};
use cluster_trop::vector::pos;

use crate::error::{CliError, CliResult};
use crate::input;
use crate::output::Output;

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Copy)]
pub struct Ctx {
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the registered fixture cases.
    Verify {
        /// Only run cases carrying one of these tags.
        #[arg(long = "tag")]
        tags: Vec<String>,
        /// List the matching cases without running them.
        #[arg(long)]
        list: bool,
        /// Case file to run instead of the built-in registry.
        #[arg(long)]
        registry: Option<String>,
    },
    /// Mutate an exchange matrix at one or more vertices, left to right.
    MutateMatrix {
        #[command(flatten)]
        q: QuiverArg,
        /// 1-based vertices, e.g. "1" or "1 3 2".
        #[arg(long)]
        k: String,
    },
    /// Mutate the principal-coefficient seed and print the reached cluster.
    SeedWalk {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// `final`: apply the word left to right from the given seed.
        /// `initial`: read it like a witness word, i.e. apply it reversed.
        #[arg(long, value_enum, default_value_t = Convention::Final)]
        convention: Convention,
    },
    /// Denominator vector of a cluster variable, given by witness or expression.
    Denvec {
        #[command(flatten)]
        q: QuiverArg,
        /// Witness "word:start", e.g. "4 3 2 4 3 1 4 2:4".
        #[arg(long, allow_hyphen_values = true)]
        witness: Option<String>,
        /// A Laurent expression in x1..xn.
        #[arg(long)]
        expr: Option<String>,
    },
    /// Walk (delta, dim, gamma) from -e_i along an extended word.
    TropicalWalk {
        #[command(flatten)]
        q: QuiverArg,
        /// Start vertex, e.g. -e4.
        #[arg(long, allow_hyphen_values = true)]
        start: String,
        /// Vertices and DT-steps (+, -), read in the initial-seed sense.
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        word: String,
        /// Tracks to print, in order.
        #[arg(long, value_enum, value_delimiter = ',', default_value = "delta,dim,gamma")]
        tracks: Vec<Track>,
    },
    /// Schur rank from a witness (tropical) or a coweight (oracle).
    SchurRank {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, allow_hyphen_values = true)]
        witness: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        coweight: Option<String>,
    },
    /// Compatibility degree (eta || delta) and the real multiplicity of eta.
    Compat {
        #[command(flatten)]
        q: QuiverArg,
        /// Witness of eta, "word:start".
        #[arg(long, allow_hyphen_values = true)]
        eta_word: String,
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
        /// `oracle`, `fixture:<file or sec63>` or `cluster-monomial:<w:i>^<c>,...`.
        #[arg(long)]
        provider: String,
    },
    /// Tropical evaluation max_v v.delta over a polytope fixture.
    PolytopeEval {
        /// Polytope JSON file or an embedded name such as `sec63`.
        #[arg(long)]
        polytope: String,
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
    },
    /// Canonical decomposition of a dimension vector or a weight.
    Candecomp {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<String>,
    },
    /// Direct queries to the generic-representation oracle.
    Oracle {
        #[command(subcommand)]
        query: OracleQuery,
    },
    /// Breadth-first search for a cluster variable or a tropical witness.
    Search {
        #[command(flatten)]
        q: QuiverArg,
        /// Target Laurent expression in x1..xn.
        #[arg(long)]
        target_expr: Option<String>,
        /// Target denominator vector.
        #[arg(long, allow_hyphen_values = true)]
        target_den: Option<String>,
        /// Target delta-vector; searched with the tropical rules.
        #[arg(long, allow_hyphen_values = true)]
        target_delta: Option<String>,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[arg(long, default_value_t = 100_000)]
        cap: usize,
    },
}

#[derive(Debug, Args)]
pub struct QuiverArg {
    /// Quiver JSON file, bare matrix JSON, or an embedded fixture name.
    #[arg(long)]
    pub quiver: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Track {
    Delta,
    Deltacheck,
    Dim,
    Gamma,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Convention {
    Initial,
    Final,
}

#[derive(Debug, Subcommand)]
pub enum OracleQuery {
    /// Generic hom(alpha, beta) of representations, or hom(delta, etacheck)
    /// of a general presentation and copresentation.
    Hom {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, requires = "beta", conflicts_with_all = ["delta", "etacheck"])]
        alpha: Option<String>,
        #[arg(long, requires = "alpha")]
        beta: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "etacheck")]
        delta: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "delta")]
        etacheck: Option<String>,
    },
    /// Generic ext(alpha, beta) of representations.
    Ext {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
    },
    /// hom(delta, coweight) and e(delta, coweight) of general (co)presentations.
    Pres {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
        #[arg(long, alias = "etacheck", allow_hyphen_values = true)]
        coweight: String,
    },
    /// e-invariant e(delta, eta) of two weights.
    E {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
        #[arg(long, allow_hyphen_values = true)]
        eta: String,
    },
    /// Dimension vector of a general weight or coweight.
    Dim {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        coweight: Option<String>,
    },
    /// Multiplicity of a real Schur root beta in the canonical decomposition of alpha.
    Kac {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
    },
    /// Real, tame, wild or decomposable.
    Classify {
        #[command(flatten)]
        q: QuiverArg,
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
    },
}

fn one_of<'a>(a: &'a Option<String>, b: &'a Option<String>, names: &str) -> CliResult<(usize, &'a str)> {
    match (a, b) {
        (Some(x), None) => Ok((0, x)),
        (None, Some(y)) => Ok((1, y)),
        _ => Err(CliError::Input(format!("give exactly one of {names}"))),
    }
}

fn witness(s: &str, b: &ExchangeMatrix) -> CliResult<Witness> {
    let w = Witness::parse(s)?;
    w.word.check(b)?;
    if w.start >= b.n() {
        return Err(CliError::Input(format!("start vertex {} out of range 1..={}", w.start + 1, b.n())));
    }
    Ok(w)
}

/// The oracle for acyclic `b`, used as a DT-step dimension provider.
fn provider_for(b: &ExchangeMatrix, ctx: &Ctx) -> Option<Oracle> {
    b.is_acyclic().then(|| Oracle::new(b, ctx.seed).ok()).flatten()
}

fn matrix_json(b: &ExchangeMatrix) -> Value {
    if b.symmetrizer().is_some() || b.frozen_mask().iter().any(|&f| f) {
        serde_json::to_value(b.to_file()).expect("quiver serializes")
    } else {
        json!(b.rows())
    }
}

fn stamped(s: &Stamped) -> Value {
    json!({ "degree": s.value, "multiplicity": pos(-s.value), "provider": s.provider })
}

pub fn execute(cmd: &Command, ctx: &Ctx) -> CliResult<Output> {
    match cmd {
        Command::Verify { tags, list, registry } => crate::verify::run(tags, *list, registry.as_deref(), ctx),
        Command::MutateMatrix { q, k } => {
            let b = input::quiver(&q.quiver)?;
            let ks = MutationWord::parse(k)?.vertices()?;
            Ok(Output::json(matrix_json(&b.mutate_seq(&ks)?)))
        }
        Command::SeedWalk { q, word, convention } => {
            let b = input::quiver(&q.quiver)?;
            let mut w = MutationWord::parse(word)?;
            w.check(&b)?;
            if matches!(convention, Convention::Initial) {
                w = w.reversed();
            }
            let s = ClusterSeed::new(b.clone()).walk(&w)?;
            let n = b.n();
            let ynames: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
            let mut cluster = Vec::new();
            for i in 0..n {
                let x = s.coefficient_free_var(i);
                cluster.push(json!({
                    "position": i + 1,
                    "variable": x.display_with(&x_names(n)),
                    "g": s.g_vector(i)?,
                    "f": s.f_polynomial(i)?.display_with(&ynames),
                    "den": x.denominator_vector()?,
                }));
            }
            Ok(Output::json(json!({ "word": w.to_string(), "matrix": matrix_json(s.b()), "cluster": cluster })))
        }
        Command::Denvec { q, witness: wit, expr } => {
            let b = input::quiver(&q.quiver)?;
            let n = b.n();
            let (which, s) = one_of(wit, expr, "--witness, --expr")?;
            let x = if which == 0 {
                let w = witness(s, &b)?;
                ClusterSeed::coefficient_free(b.clone()).walk(&w.word.reversed())?.coefficient_free_var(w.start)
            } else {
                Laurent::parse(s, &x_names(n))?
            };
            let den = x.denominator_vector()?;
            Ok(Output::vectors(json!({ "den": den, "variable": x.display_with(&x_names(n)) }), &[("den", &den)]))
        }
        Command::TropicalWalk { q, start, word, tracks } => {
            let b = input::quiver(&q.quiver)?;
            let i = input::start_vertex(start, b.n())?;
            let w = Witness::new(MutationWord::parse(word)?, i);
            w.word.check(&b)?;
            let oracle = provider_for(&b, ctx);
            let s = walk_witness(&b, &w, oracle.as_ref().map(|o| o as &dyn DimProvider))?;
            let gamma = s.gamma.clone().expect("gamma is tracked from -e_i");
            let cols: Vec<(&str, &[i64])> = tracks
                .iter()
                .map(|t| match t {
                    Track::Delta => ("delta", &s.delta[..]),
                    Track::Deltacheck => ("deltacheck", &s.deltacheck[..]),
                    Track::Dim => ("dim", &s.dim[..]),
                    Track::Gamma => ("gamma", &gamma[..]),
                })
                .collect();
            let obj: serde_json::Map<String, Value> = cols.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            Ok(Output::vectors(Value::Object(obj), &cols))
        }
        Command::SchurRank { q, witness: wit, coweight } => {
            let b = input::quiver(&q.quiver)?;
            let (which, s) = one_of(wit, coweight, "--witness, --coweight")?;
            let gamma = if which == 0 {
                let w = witness(s, &b)?;
                let oracle = provider_for(&b, ctx);
                walk_witness(&b, &w, oracle.as_ref().map(|o| o as &dyn DimProvider))?.gamma.expect("tracked")
            } else {
                Oracle::new(&b, ctx.seed)?.schur_rank_rep(&input::vector(s, b.n(), "coweight")?)?
            };
            Ok(Output::vectors(json!({ "gamma": gamma }), &[("gamma", &gamma)]))
        }
        Command::Compat { q, eta_word, delta, provider } => {
            let b = input::quiver(&q.quiver)?;
            let eta = witness(eta_word, &b)?;
            let delta = input::vector(delta, b.n(), "delta")?;
            let oracle;
            let p = if provider == "oracle" {
                oracle = Oracle::new(&b, ctx.seed)?;
                FProvider::Oracle(&oracle)
            } else if let Some(path) = provider.strip_prefix("fixture:") {
                FProvider::Fixture(input::polytope(path)?)
            } else if let Some(spec) = provider.strip_prefix("cluster-monomial:") {
                let mut factors = Vec::new();
                for part in spec.split(',').filter(|p| !p.trim().is_empty()) {
                    let (w, c) = part.rsplit_once('^').unwrap_or((part, "1"));
                    let c: i64 = c.trim().parse().map_err(|_| CliError::Input(format!("bad exponent in {part:?}")))?;
                    factors.push((witness(w, &b)?, c));
                }
                FProvider::ClusterMonomial(ClusterMonomialProvider::new(&b, &factors)?)
            } else {
                return Err(CliError::Input(format!(
                    "unknown provider {provider:?}; use oracle, fixture:<path> or cluster-monomial:<w:i>^<c>,..."
                )));
            };
            let s = match b.symmetrizer() {
                Some(d) if d.iter().any(|&x| x != 1) => compat_degree_symmetrizable(&b, &eta, &delta, &p, d)?,
                _ => compat_degree(&b, &eta, &delta, &p, None)?,
            };
            Ok(Output::json(stamped(&s)))
        }
        Command::PolytopeEval { polytope, delta } => {
            let f = input::polytope(polytope)?;
            let value = f.polytope()?.tropical_eval(&input::vector(delta, f.n, "delta")?)?;
            Ok(Output::json(json!({ "value": value })))
        }
        Command::Candecomp { q, alpha, delta } => {
            let b = input::quiver(&q.quiver)?;
            let o = Oracle::new(&b, ctx.seed)?;
            let (which, s) = one_of(alpha, delta, "--alpha, --delta")?;
            let v = input::vector(s, b.n(), if which == 0 { "alpha" } else { "delta" })?;
            let dec = if which == 0 {
                if v.iter().any(|&x| x < 0) {
                    return Err(CliError::Input(format!("alpha {v:?} is not a dimension vector")));
                }
                o.canonical_decomposition(&v)?
            } else {
                o.canonical_decomposition_delta(&v)?
            };
            let list: Vec<Value> = dec.summands.iter().map(|(v, m)| json!({ "v": v, "m": m })).collect();
            Ok(Output::json(Value::Array(list)))
        }
        Command::Oracle { query } => oracle_query(query, ctx),
        Command::Search { q, target_expr, target_den, target_delta, depth, cap } => {
            let b = input::quiver(&q.quiver)?;
            let n = b.n();
            let given = [target_expr, target_den, target_delta].iter().filter(|t| t.is_some()).count();
            if given != 1 {
                return Err(CliError::Input("give exactly one of --target-expr, --target-den, --target-delta".into()));
            }
            if let Some(d) = target_delta {
                let target = input::vector(d, n, "delta")?;
                let out = match reach_search(&b, &target, *depth, *cap)? {
                    SearchOutcome::Found(w) => json!({ "found": true, "witness": w.to_string() }),
                    other => not_found(&other),
                };
                return Ok(Output::json(out));
            }
            let target = match (target_expr, target_den) {
                (Some(e), _) => SearchTarget::Variable(Laurent::parse(e, &x_names(n))?),
                (_, Some(d)) => SearchTarget::Denominator(input::vector(d, n, "denominator")?),
                _ => unreachable!("exactly one target"),
            };
            let out = match search_variable(&b, &target, *depth, *cap)? {
                SearchOutcome::Found(loc) => {
                    let w = loc.witness();
                    let s = walk_witness(&b, &w, None)?;
                    let x = ClusterSeed::coefficient_free(b.clone()).walk(&loc.word)?.coefficient_free_var(loc.position);
                    json!({
                        "found": true,
                        "word": loc.word.to_string(),
                        "position": loc.position + 1,
                        "witness": w.to_string(),
                        "variable": x.display_with(&x_names(n)),
                        "den": x.denominator_vector()?,
                        "delta": s.delta,
                        "dim": s.dim,
                    })
                }
                other => not_found(&other),
            };
            Ok(Output::json(out))
        }
    }
}

fn not_found<T>(o: &SearchOutcome<T>) -> Value {
    match o {
        SearchOutcome::Exhausted { nodes } => json!({ "found": false, "reason": "node cap reached", "nodes": nodes }),
        _ => json!({ "found": false, "reason": "not within the depth bound" }),
    }
}

/// Oracle answers carry the seed that produced them.
fn oracle_query(q: &OracleQuery, ctx: &Ctx) -> CliResult<Output> {
    let mut out = oracle_answer(q, ctx)?;
    if let Value::Object(m) = &mut out.json {
        m.insert("seed".into(), json!(ctx.seed));
    }
    Ok(out)
}

fn oracle_answer(q: &OracleQuery, ctx: &Ctx) -> CliResult<Output> {
    let load = |a: &QuiverArg| -> CliResult<(ExchangeMatrix, Oracle)> {
        let b = input::quiver(&a.quiver)?;
        let o = Oracle::new(&b, ctx.seed)?;
        Ok((b, o))
    };
    let dim_vec = |s: &str, n: usize, what: &str| -> CliResult<Vec<i64>> {
        let v = input::vector(s, n, what)?;
        if v.iter().any(|&x| x < 0) {
            return Err(CliError::Input(format!("{what} {v:?} is not a dimension vector")));
        }
        Ok(v)
    };
    match q {
        OracleQuery::Hom { q, alpha, beta, delta, etacheck } => {
            let (b, o) = load(q)?;
            let value = match (alpha, beta, delta, etacheck) {
                (Some(a), Some(bt), None, None) => o.generic_hom(&dim_vec(a, b.n(), "alpha")?, &dim_vec(bt, b.n(), "beta")?)?,
                (None, None, Some(d), Some(e)) => {
                    o.hom_e_pres(&input::vector(d, b.n(), "delta")?, &input::vector(e, b.n(), "etacheck")?)?.0
                }
                _ => return Err(CliError::Input("give --alpha and --beta, or --delta and --etacheck".into())),
            };
            Ok(Output::json(json!({ "hom": value })))
        }
        OracleQuery::Ext { q, alpha, beta } => {
            let (b, o) = load(q)?;
            let value = o.generic_ext(&dim_vec(alpha, b.n(), "alpha")?, &dim_vec(beta, b.n(), "beta")?)?;
            Ok(Output::json(json!({ "ext": value })))
        }
        OracleQuery::Pres { q, delta, coweight } => {
            let (b, o) = load(q)?;
            let (h, e) = o.hom_e_pres(&input::vector(delta, b.n(), "delta")?, &input::vector(coweight, b.n(), "coweight")?)?;
            Ok(Output::json(json!({ "hom": h, "e": e })))
        }
        OracleQuery::E { q, delta, eta } => {
            let (b, o) = load(q)?;
            let e = o.e_inv(&input::vector(delta, b.n(), "delta")?, &input::vector(eta, b.n(), "eta")?)?;
            Ok(Output::json(json!({ "e": e })))
        }
        OracleQuery::Dim { q, delta, coweight } => {
            let (b, o) = load(q)?;
            let (which, s) = one_of(delta, coweight, "--delta, --coweight")?;
            let dim = if which == 0 {
                o.dim_of_delta(&input::vector(s, b.n(), "delta")?)?
            } else {
                o.dim_of_coweight(&input::vector(s, b.n(), "coweight")?)?
            };
            Ok(Output::vectors(json!({ "dim": dim }), &[("dim", &dim)]))
        }
        OracleQuery::Kac { q, alpha, beta } => {
            let (b, o) = load(q)?;
            let m = kac_multiplicity(&o, &dim_vec(alpha, b.n(), "alpha")?, &dim_vec(beta, b.n(), "beta")?)?;
            Ok(Output::json(json!({ "multiplicity": m })))
        }
        OracleQuery::Classify { q, delta } => {
            let (b, o) = load(q)?;
            let class = o.classify_delta(&input::vector(delta, b.n(), "delta")?)?;
            Ok(Output::json(json!({ "class": class })))
        }
    }
}
