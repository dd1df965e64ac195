use std::fmt::Display;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use kodag_core::chains::{
    check_markov, corollary31_literal, count_interval_chains, enumerate_layer_chains, fnomial_via_max,
    hyperbox_decode, hyperbox_encode, theorem1_check, theorem3_check, ViaMaxMode, ViaMaxReport,
};
use kodag_core::incidence::{
    coding_matrix, eta, eta_inverse, krot_mobius, kroton, kroton_alternating_literal, kroton_alternating_weighted,
    kroton_recurrence, l_logic, max_matrix, mobius_closed_form, mobius_inverse, mobius_recurrence,
    validate_block_structure, zeta_closure, zeta_formula_dziemianczuk, zeta_formula_krot, zeta_formula_kwasniewski,
};
use kodag_core::poset::Density;
use kodag_core::{
    CountMethod, Error, GradedPoset, IncidenceMatrix, IntMatrix, MobiusMode, NodeRef, Sequence,
    DEFAULT_ENUMERATION_CAP,
};

use crate::{load_poset, CliResult};

/// Sequences every suite runs on.
pub const FIXTURE_SEQUENCES: [&str; 5] = ["nat", "fib", "fib+root", "gauss:2", "const:3"];

/// Published matrix regions.
const PRINTED: [(&str, &str); 9] = [
    ("zeta_nat", include_str!("../fixtures/zeta_nat.json")),
    ("zeta_fib_rooted", include_str!("../fixtures/zeta_fib_rooted.json")),
    ("mobius_nat", include_str!("../fixtures/mobius_nat.json")),
    ("mobius_fib_rooted", include_str!("../fixtures/mobius_fib_rooted.json")),
    ("mobius_list_1_1_3", include_str!("../fixtures/mobius_list_1_1_3.json")),
    ("mobius_list_1_3", include_str!("../fixtures/mobius_list_1_3.json")),
    ("coding_nat", include_str!("../fixtures/coding_nat.json")),
    ("coding_list_1_1_3", include_str!("../fixtures/coding_list_1_1_3.json")),
    ("coding_list_1_3", include_str!("../fixtures/coding_list_1_3.json")),
];

const COUNTEREXAMPLE: &str = include_str!("../fixtures/counterexample.json");

const DENSITIES: [(u64, u64); 3] = [(2, 5), (7, 10), (1, 1)];

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    /// Maximum level count of the random posets.
    #[arg(long, default_value_t = 6)]
    levels: usize,
    /// Number of seeded random graded posets.
    #[arg(long, default_value_t = 100)]
    random: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Extra poset document checked alongside the random posets.
    #[arg(long)]
    poset: Option<PathBuf>,
    /// Extra matrix-region fixture document.
    #[arg(long)]
    fixture: Vec<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    ZetaEquivalence,
    Mobius,
    Max,
    Theorems,
    Conjectures,
}

struct Fail(String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(e.to_string())
    }
}

type Check = Result<(), Fail>;

fn ensure(ok: bool, detail: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(Fail(detail()))
    }
}

#[derive(Default)]
struct Reporter {
    passed: usize,
    failed: usize,
    reported: usize,
}

impl Reporter {
    fn check(&mut self, suite: &str, label: impl Display, result: Check) {
        match result {
            Ok(()) => {
                self.passed += 1;
                println!("PASS   {suite}: {label}");
            }
            Err(Fail(detail)) => {
                self.failed += 1;
                println!("FAIL   {suite}: {label}: {detail}");
            }
        }
    }

    fn report(&mut self, suite: &str, label: impl Display, detail: impl Display) {
        self.reported += 1;
        println!("REPORT {suite}: {label}: {detail}");
    }
}

/// A published top-left matrix region for a cobweb.
struct Fixture {
    name: String,
    kind: String,
    seq: String,
    levels: usize,
    rows: IntMatrix,
}

impl Fixture {
    fn parse(name: &str, text: &str) -> Result<Fixture, Fail> {
        let doc: Value = serde_json::from_str(text).map_err(Error::from)?;
        let field = |key: &str| doc.get(key).ok_or_else(|| Fail(format!("{name}: missing \"{key}\"")));
        let kind = field("kind")?.as_str().ok_or_else(|| Fail(format!("{name}: kind must be a string")))?;
        let seq = field("seq")?.as_str().ok_or_else(|| Fail(format!("{name}: seq must be a string")))?;
        let levels = field("levels")?.as_u64().ok_or_else(|| Fail(format!("{name}: levels must be an integer")))?;
        let rows = IntMatrix::from_json(field("rows")?)?;
        Ok(Fixture { name: name.into(), kind: kind.into(), seq: seq.into(), levels: levels as usize, rows })
    }

    fn computed(&self) -> Result<IntMatrix, Fail> {
        let seq: Sequence = self.seq.parse()?;
        let matrix = match self.kind.as_str() {
            "zeta" => zeta_closure(&GradedPoset::cobweb(&seq, self.levels)?).into_matrix(),
            "mobius" => mobius_inverse(&zeta_closure(&GradedPoset::cobweb(&seq, self.levels)?))?.into_matrix(),
            "coding" => coding_matrix(&seq, self.levels)?.matrix().clone(),
            other => return Err(Fail(format!("unknown fixture kind {other:?}"))),
        };
        Ok(matrix)
    }

    fn check(&self) -> Check {
        let computed = self.computed()?;
        let (h, w) = (self.rows.rows(), self.rows.cols());
        ensure(h <= computed.rows() && w <= computed.cols(), || {
            format!("region {h}x{w} exceeds the {}x{} matrix", computed.rows(), computed.cols())
        })?;
        let region = computed.submatrix(0, 0, h, w);
        for i in 0..h {
            for j in 0..w {
                ensure(region.get(i, j) == self.rows.get(i, j), || {
                    format!("entry ({i},{j}): computed {} vs fixture {}", region.get(i, j), self.rows.get(i, j))
                })?;
            }
        }
        Ok(())
    }
}

/// Outcome per suite for the printed fixtures and any `--fixture` files.
fn fixture_checks(args: &VerifyArgs, kinds: &[&str], suite: &str, rep: &mut Reporter) {
    let mut docs: Vec<Result<Fixture, (String, Fail)>> =
        PRINTED.iter().map(|(name, text)| Fixture::parse(name, text).map_err(|f| (name.to_string(), f))).collect();
    for path in &args.fixture {
        let name = path.display().to_string();
        docs.push(
            std::fs::read_to_string(path)
                .map_err(|e| Fail(e.to_string()))
                .and_then(|text| Fixture::parse(&name, &text))
                .map_err(|f| (name.clone(), f)),
        );
    }
    for doc in docs {
        match doc {
            Ok(f) if kinds.contains(&f.kind.as_str()) => rep.check(
                suite,
                format_args!("fixture {} ({} {} levels, {}x{} region)", f.name, f.seq, f.levels, f.rows.rows(), f.rows.cols()),
                f.check(),
            ),
            Ok(_) => {}
            Err((name, fail)) => rep.check(suite, format_args!("fixture {name}"), Err(fail)),
        }
    }
}

fn fixture_sequences() -> Vec<(&'static str, Sequence)> {
    FIXTURE_SEQUENCES.iter().map(|s| (*s, s.parse().expect("fixture specs are valid"))).collect()
}

struct Instance {
    label: String,
    poset: GradedPoset,
}

/// Seeded random graded posets; density and mute policy cycle through every combination.
fn random_instances(args: &VerifyArgs) -> Result<Vec<Instance>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let max_levels = args.levels.max(1);
    let mut out = Vec::with_capacity(args.random);
    for i in 0..args.random {
        let levels = rng.gen_range(1..=max_levels);
        let sizes: Vec<usize> = (0..levels).map(|_| rng.gen_range(1..=5)).collect();
        let (num, den) = DENSITIES[i % DENSITIES.len()];
        let allow_mute = (i / DENSITIES.len()).is_multiple_of(2);
        let seed: u64 = rng.gen();
        let poset = GradedPoset::random_with_sizes(&sizes, Density::new(num, den)?, seed, allow_mute)?;
        let label = format!(
            "random #{i} sizes {sizes:?} density {num}/{den} {} seed {seed}",
            if allow_mute { "mute-allowed" } else { "mute-free" }
        );
        out.push(Instance { label, poset });
    }
    Ok(out)
}

fn extra_instances(args: &VerifyArgs) -> CliResult<Vec<Instance>> {
    let mut out = Vec::new();
    if let Some(path) = &args.poset {
        out.push(Instance { label: format!("poset {}", path.display()), poset: load_poset(path)? });
    }
    Ok(out)
}

fn identity_check(mu: &IncidenceMatrix, zeta: &IncidenceMatrix) -> Check {
    ensure(mu.mul(zeta)?.is_identity(), || "mu*zeta != I".into())?;
    ensure(zeta.mul(mu)?.is_identity(), || "zeta*mu != I".into())
}

fn same(a: &IncidenceMatrix, b: &IncidenceMatrix, what: &str) -> Check {
    if a == b {
        return Ok(());
    }
    let n = a.dim().min(b.dim());
    let at = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| a.get(i, j) != b.get(i, j));
    Err(Fail(match at {
        Some((i, j)) => format!("{what} differ at ({i},{j}): {} vs {}", a.get(i, j), b.get(i, j)),
        None => format!("{what} differ in shape"),
    }))
}

const COBWEB_LEVELS: usize = 8;
const CHAIN_LEVELS: usize = 7;
const KROTON_LEVELS: usize = 12;

fn zeta_suite(args: &VerifyArgs, rep: &mut Reporter) {
    const S: &str = "zeta-equivalence";
    for (name, seq) in fixture_sequences() {
        let result = (|| -> Check {
            for n in 1..=COBWEB_LEVELS {
                let closure = zeta_closure(&GradedPoset::cobweb(&seq, n)?);
                same(&closure, &zeta_formula_kwasniewski(&seq, n)?, &format!("n={n}: closure and delta formula"))?;
                same(&closure, &zeta_formula_krot(&seq, n)?, &format!("n={n}: closure and grid formula"))?;
                same(&closure, &zeta_formula_dziemianczuk(&seq, n)?, &format!("n={n}: closure and bracket formula"))?;
            }
            Ok(())
        })();
        rep.check(S, format_args!("{name} n=1..{COBWEB_LEVELS}: closure = delta formula = grid formula = bracket formula"), result);
    }
    fixture_checks(args, &["zeta"], S, rep);
}

fn mobius_suite(args: &VerifyArgs, instances: &[Instance], rep: &mut Reporter) {
    const S: &str = "mobius";
    for (name, seq) in fixture_sequences() {
        let result = (|| -> Check {
            for n in 1..=COBWEB_LEVELS {
                let p = GradedPoset::cobweb(&seq, n)?;
                let zeta = zeta_closure(&p);
                let inverse = mobius_inverse(&zeta)?;
                identity_check(&inverse, &zeta).map_err(|Fail(m)| Fail(format!("n={n}: {m}")))?;
                same(&inverse, &mobius_recurrence(&p), &format!("n={n}: inversion and recurrence"))?;
                let closed = mobius_closed_form(&p, MobiusMode::Strict)?;
                same(&inverse, &closed.matrix, &format!("n={n}: inversion and closed form"))?;
                for (m, what) in [(&zeta, "zeta"), (&inverse, "mu")] {
                    let report = validate_block_structure(m);
                    ensure(report.ok, || format!("n={n}: {what} block structure broken at {:?}", report.first_offense))?;
                }
            }
            Ok(())
        })();
        rep.check(S, format_args!("{name} n=1..{COBWEB_LEVELS}: mu*zeta = zeta*mu = I, inversion = recurrence = closed form"), result);

        let result = (|| -> Check {
            let n = 6;
            let p = GradedPoset::cobweb(&seq, n)?;
            let mu = mobius_inverse(&zeta_closure(&p))?;
            for x in p.nodes() {
                for y in p.nodes() {
                    let (i, j) = (p.index_of(x)?, p.index_of(y)?);
                    let value = if x.level <= y.level { krot_mobius(&seq, x, y)? } else { BigInt::from(0) };
                    ensure(&value == mu.get(i, j), || format!("{x} -> {y}: formula {value} vs {}", mu.get(i, j)))?;
                }
            }
            Ok(())
        })();
        rep.check(S, format_args!("{name} n=6: grid-coordinate Möbius formula = inversion"), result);
    }
    for inst in instances {
        let p = &inst.poset;
        let result = (|| -> Check {
            let zeta = zeta_closure(p);
            let inverse = mobius_inverse(&zeta)?;
            identity_check(&inverse, &zeta)?;
            same(&inverse, &mobius_recurrence(p), "inversion and recurrence")?;
            ensure(eta(p).mul(&eta_inverse(p))?.is_identity(), || "eta*eta^-1 != I".into())?;
            ensure(eta_inverse(p).mul(&eta(p))?.is_identity(), || "eta^-1*eta != I".into())
        })();
        rep.check(S, format_args!("{}: mu*zeta = zeta*mu = I, inversion = recurrence, eta*eta^-1 = I", inst.label), result);
    }
    fixture_checks(args, &["mobius", "coding"], S, rep);
}

/// Largest cobweb prefix with at most `max_levels` levels and sizes at most `max_size`.
fn small_cobweb(seq: &Sequence, max_levels: usize, max_size: usize) -> Result<Option<GradedPoset>, Error> {
    let sizes = seq.level_sizes(max_levels)?;
    let n = sizes.iter().take_while(|&&s| s <= max_size).count();
    if n == 0 {
        return Ok(None);
    }
    Ok(Some(GradedPoset::cobweb(seq, n)?))
}

fn max_checks(p: &GradedPoset, brute_force: bool) -> Check {
    let max = max_matrix(p);
    let kappa = p.cover_matrix();
    let n = p.node_count();
    let delta_minus_kappa = IntMatrix::identity(n).sub(kappa.matrix())?;
    ensure(max.matrix().mul(&delta_minus_kappa)?.is_identity(), || "[Max]*(delta-kappa) != I".into())?;
    ensure(delta_minus_kappa.mul(max.matrix())?.is_identity(), || "(delta-kappa)*[Max] != I".into())?;
    same(&l_logic(&max)?, &zeta_closure(p), "L([Max]) and zeta")?;
    let report = validate_block_structure(&max);
    ensure(report.ok, || format!("[Max] block structure broken at {:?}", report.first_offense))?;
    if brute_force {
        let nodes: Vec<NodeRef> = p.nodes().collect();
        for (i, &x) in nodes.iter().enumerate() {
            for (j, &y) in nodes.iter().enumerate() {
                let count = BigInt::from(count_interval_chains(p, x, y)?);
                ensure(&count == max.get(i, j), || format!("[Max] {x} -> {y}: {} vs {count} chains", max.get(i, j)))?;
            }
        }
    }
    Ok(())
}

fn max_suite(instances: &[Instance], rep: &mut Reporter) {
    const S: &str = "max";
    for (name, seq) in fixture_sequences() {
        let result = (|| -> Check {
            for n in 1..=COBWEB_LEVELS {
                max_checks(&GradedPoset::cobweb(&seq, n)?, false).map_err(|Fail(m)| Fail(format!("n={n}: {m}")))?;
            }
            Ok(())
        })();
        rep.check(S, format_args!("{name} n=1..{COBWEB_LEVELS}: [Max]^-1 = delta - kappa, L([Max]) = zeta"), result);
        match small_cobweb(&seq, 6, 4) {
            Ok(Some(p)) => {
                let levels = p.levels();
                rep.check(S, format_args!("{name} n={levels}: [Max] = brute-force maximal chain counts"), max_checks(&p, true));
            }
            Ok(None) => {}
            Err(e) => rep.check(S, format_args!("{name}: brute-force [Max]"), Err(e.into())),
        }
    }
    for inst in instances {
        rep.check(
            S,
            format_args!("{}: [Max] = brute-force chain counts, [Max]^-1 = delta - kappa, L([Max]) = zeta", inst.label),
            max_checks(&inst.poset, true),
        );
    }
}

#[derive(Default)]
struct Methods {
    enumeration: usize,
    block_product: usize,
}

impl Methods {
    fn add(&mut self, m: CountMethod) {
        match m {
            CountMethod::Enumeration => self.enumeration += 1,
            CountMethod::BlockProduct => self.block_product += 1,
        }
    }
}

impl Display for Methods {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} by enumeration, {} by block products", self.enumeration, self.block_product)
    }
}

fn theorem_suite(args: &VerifyArgs, rep: &mut Reporter) {
    const S: &str = "theorems";
    let cap = args.cap;
    for (name, seq) in fixture_sequences() {
        let mut methods = Methods::default();
        let result = (|| -> Check {
            for n in 1..=CHAIN_LEVELS {
                for k in 0..n {
                    let r = theorem1_check(&seq, n, k, cap)?;
                    methods.add(r.method);
                    ensure(r.holds(), || format!("n={n}, k={k}: {} chains vs {}", r.layer_chains, r.product))?;
                }
            }
            Ok(())
        })();
        rep.check(S, format_args!("{name} 0<=k<n<={CHAIN_LEVELS}: layer chains = fnomial(n,k) (n-k)_F! ({methods})"), result);

        let mut methods = Methods::default();
        let result = (|| -> Check {
            for n in 1..=CHAIN_LEVELS {
                for k in 0..n {
                    let r = theorem3_check(&seq, k, n, cap)?;
                    methods.add(r.method);
                    ensure(r.holds(), || format!("k={k}, n={n}: sums {:?} vs falling {}", r.sums, r.falling))?;
                }
            }
            Ok(())
        })();
        rep.check(S, format_args!("{name} 0<=k<n<={CHAIN_LEVELS}: [Max] row sums into level n = n_F falling (n-k) ({methods})"), result);

        let mut methods = Methods::default();
        let result = (|| -> Check {
            for s in 1..=CHAIN_LEVELS {
                for r in 1..=s {
                    for k in r..=s {
                        let m = check_markov(&seq, r, k, s, cap)?;
                        methods.add(m.method);
                        ensure(m.holds(), || format!("r={r}, k={k}, s={s}: {m:?}"))?;
                    }
                }
            }
            Ok(())
        })();
        rep.check(S, format_args!("{name} r<=k<=s<={CHAIN_LEVELS}: Markov identities ({methods})"), result);

        let result = (|| -> Check {
            let coding = coding_matrix(&seq, KROTON_LEVELS)?;
            for s in 2..=KROTON_LEVELS {
                for r in 1..s {
                    let closed = kroton(&seq, r, s)?;
                    ensure(closed == kroton_recurrence(&seq, r, s)?, || format!("r={r}, s={s}: closed form vs recurrence"))?;
                    let weighted = kroton_alternating_weighted(&seq, r, s)?;
                    ensure(weighted.holds(), || format!("r={r}, s={s}: weighted alternating sum {}", weighted.alternating_sum))?;
                    let c = coding.get(r, s);
                    ensure(c.abs() == BigInt::from(closed.value.clone()), || format!("r={r}, s={s}: |c| = {} vs K = {}", c.abs(), closed.value))?;
                }
            }
            Ok(())
        })();
        rep.check(
            S,
            format_args!("{name} 1<=r<s<={KROTON_LEVELS}: kroton closed form = recurrence = weighted alternating sum = |c[r,s]|"),
            result,
        );

        let result = (|| -> Check {
            for n in 1..=5 {
                let p = GradedPoset::cobweb(&seq, n)?;
                for k in 1..=n {
                    let set = enumerate_layer_chains(&p, k, n, cap)?;
                    let mut seen = std::collections::HashSet::new();
                    for chain in &set.chains {
                        let point = hyperbox_encode(chain);
                        ensure(hyperbox_decode(&seq, &point)? == *chain, || format!("k={k}, n={n}: decode(encode) differs"))?;
                        ensure(seen.insert(point), || format!("k={k}, n={n}: repeated box point"))?;
                    }
                    let volume: usize = p.sizes()[k - 1..n].iter().product();
                    ensure(seen.len() == volume, || format!("k={k}, n={n}: {} points vs box volume {volume}", seen.len()))?;
                }
            }
            Ok(())
        })();
        rep.check(S, format_args!("{name} 1<=k<=n<=5: hyper-box encoding is a bijection"), result);

        let result = (|| -> Check {
            for n in 0..=CHAIN_LEVELS {
                for k in 0..=n {
                    let r = fnomial_via_max(&seq, n, k, ViaMaxMode::Derived)?;
                    ensure(r.holds(), || format!("n={n}, k={k}: {r:?}"))?;
                }
            }
            Ok(())
        })();
        rep.check(S, format_args!("{name} 0<=k<=n<={CHAIN_LEVELS}: F-nomials from [Max] row sums"), result);
    }
}

fn conjecture_suite(instances: &[Instance], rep: &mut Reporter) {
    const S: &str = "conjectures";
    let counterexample = GradedPoset::from_json_str(COUNTEREXAMPLE).expect("bundled fixture parses");
    let mut all: Vec<(&str, &GradedPoset)> = vec![("counterexample sizes [1, 2, 2]", &counterexample)];
    all.extend(instances.iter().map(|i| (i.label.as_str(), &i.poset)));
    for (label, p) in &all {
        let detail = match mobius_closed_form(p, MobiusMode::Conjecture) {
            Ok(r) => match r.first_mismatch {
                None => "closed-form mu agrees with inversion".to_string(),
                Some(m) => format!(
                    "closed-form mu mismatch at ({},{}) block ({},{}): exact {} vs closed form {}",
                    m.row, m.col, m.block.0, m.block.1, m.exact, m.candidate
                ),
            },
            Err(e) => format!("not evaluated: {e}"),
        };
        rep.report(S, label, detail);
        if !p.is_cobweb() {
            rep.report(S, label, general_theorem3(p));
        }
    }

    for (name, seq) in fixture_sequences() {
        let mut failing = Vec::new();
        let mut total = 0;
        for s in 2..=KROTON_LEVELS {
            for r in 1..s {
                total += 1;
                match kroton_alternating_literal(&seq, r, s) {
                    Ok(c) if c.holds() => {}
                    Ok(c) => failing.push(format!("({r},{s}): K={} sum={}", c.kroton, c.alternating_sum)),
                    Err(e) => failing.push(format!("({r},{s}): {e}")),
                }
            }
        }
        rep.report(
            S,
            format_args!("{name}: unweighted kroton alternating sum"),
            format_args!("{} of {total} pairs hold; first failure {}", total - failing.len(), failing.first().map_or("none", String::as_str)),
        );

        let mut holds = 0;
        let mut evaluated = 0;
        let mut first = None;
        for n in 0..=CHAIN_LEVELS {
            for k in 0..=n {
                match fnomial_via_max(&seq, n, k, ViaMaxMode::Literal) {
                    Ok(ViaMaxReport::NotEvaluable(_)) => {}
                    Ok(r) => {
                        evaluated += 1;
                        if r.holds() {
                            holds += 1;
                        } else if first.is_none() {
                            first = Some(format!("l={n}, k={k}: {r:?}"));
                        }
                    }
                    Err(e) => first = first.or(Some(format!("l={n}, k={k}: {e}"))),
                }
            }
        }
        rep.report(
            S,
            format_args!("{name}: [Max]_(k-2,l+1) / (l-k)_F! index form"),
            format_args!("{holds} of {evaluated} evaluable cases hold; first failure {}", first.as_deref().unwrap_or("none")),
        );

        let mut holds = 0;
        let mut total = 0;
        let mut first = None;
        for n in 2..=CHAIN_LEVELS {
            for k in 2..=n {
                total += 1;
                match corollary31_literal(&seq, k, n) {
                    Ok((lhs, rhs)) if lhs == rhs => holds += 1,
                    Ok((lhs, rhs)) => first = first.or(Some(format!("k={k}, n={n}: {lhs} vs {rhs}"))),
                    Err(e) => first = first.or(Some(format!("k={k}, n={n}: {e}"))),
                }
            }
        }
        rep.report(
            S,
            format_args!("{name}: [Max]_(k,n) = fnomial(n-1,k-2) (n-k+1)_F! index form"),
            format_args!("{holds} of {total} cases hold; first failure {}", first.as_deref().unwrap_or("none")),
        );
    }
}

/// Whether `[Max]` row sums into each higher level depend only on the source level.
fn general_theorem3(p: &GradedPoset) -> String {
    let max = max_matrix(p);
    let mut varying = Vec::new();
    for k in 1..p.levels() {
        for n in k + 1..=p.levels() {
            let sums: Vec<BigInt> = (0..p.size(k))
                .map(|i| {
                    let row = max.offset(k) + i;
                    (max.offset(n)..max.offset(n) + p.size(n)).map(|j| max.get(row, j)).sum()
                })
                .collect();
            if sums.windows(2).any(|w| w[0] != w[1]) {
                varying.push(format!("({k},{n})"));
            }
        }
    }
    if varying.is_empty() {
        "[Max] level row sums are constant on every level pair".into()
    } else {
        format!("[Max] level row sums vary on level pairs {}", varying.join(" "))
    }
}

pub fn run(args: &VerifyArgs) -> CliResult<u8> {
    let mut instances = random_instances(args)?;
    instances.extend(extra_instances(args)?);
    let mut rep = Reporter::default();
    let wants = |s: Suite| args.suite == Suite::All || args.suite == s;
    if wants(Suite::ZetaEquivalence) {
        zeta_suite(args, &mut rep);
    }
    if wants(Suite::Mobius) {
        mobius_suite(args, &instances, &mut rep);
    }
    if wants(Suite::Max) {
        max_suite(&instances, &mut rep);
    }
    if wants(Suite::Theorems) {
        theorem_suite(args, &mut rep);
    }
    if wants(Suite::Conjectures) {
        conjecture_suite(&instances, &mut rep);
    }
    println!("summary: {} passed, {} failed, {} reported", rep.passed, rep.failed, rep.reported);
    Ok(u8::from(rep.failed > 0))
}
