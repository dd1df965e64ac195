//! Maximal-chain enumeration and the counting identities checked with it.
//!
//! A layer `<Φ_k → Φ_n>` is the sub-poset on levels `k..=n`; its maximal
//! chains pick one node per level with every step a cover. Enumeration is
//! brute force and capped. Above the cap, counts come from block products
//! and reports say which route produced them.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::fsequence::Sequence;
use crate::incidence::max_matrix;
use crate::poset::{GradedPoset, NodeRef};

pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

/// A chain with exactly one node on each of the consecutive levels it spans.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    nodes: Vec<NodeRef>,
}

impl Chain {
    /// Checks that levels are consecutive and each step is a cover of `p`.
    pub fn new(p: &GradedPoset, nodes: Vec<NodeRef>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::Domain("a chain needs at least one node".into()));
        }
        for x in &nodes {
            p.check_node(*x)?;
        }
        for w in nodes.windows(2) {
            if !p.covers(w[0], w[1]) {
                return Err(Error::Domain(format!("{} is not covered by {}", w[0], w[1])));
            }
        }
        Ok(Chain { nodes })
    }

    pub fn nodes(&self) -> &[NodeRef] {
        &self.nodes
    }

    pub fn start_level(&self) -> usize {
        self.nodes[0].level
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.nodes.iter().map(|x| Value::from(vec![x.level, x.pos])).collect())
    }
}

/// All maximal chains of one layer, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSet {
    pub k: usize,
    pub n: usize,
    pub chains: Vec<Chain>,
}

impl ChainSet {
    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.chains.iter().map(Chain::to_json).collect())
    }
}

/// Counts-only export: `{"count": "<decimal>", "k": .., "n": ..}`.
pub fn count_json(k: usize, n: usize, count: &BigUint) -> Value {
    let mut map = serde_json::Map::new();
    map.insert("count".into(), Value::from(count.to_string()));
    map.insert("k".into(), Value::from(k));
    map.insert("n".into(), Value::from(n));
    Value::Object(map)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    Enumeration,
    BlockProduct,
}

impl CountMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            CountMethod::Enumeration => "enumeration",
            CountMethod::BlockProduct => "block-product",
        }
    }
}

fn check_layer(p: &GradedPoset, k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n || n > p.levels() {
        return Err(Error::Domain(format!("layer needs 1 <= k <= n <= {}, got k={k}, n={n}", p.levels())));
    }
    Ok(())
}

/// Number of maximal chains of `<Φ_k → Φ_n>` from the entries of `B_k ... B_{n-1}`.
pub fn layer_count_by_blocks(p: &GradedPoset, k: usize, n: usize) -> Result<BigUint> {
    check_layer(p, k, n)?;
    if k == n {
        return Ok(BigUint::from(p.size(k)));
    }
    let total: BigInt = p.block_product(k, n)?.data().iter().sum();
    Ok(total.to_biguint().expect("path counts are nonnegative"))
}

/// Enumerates the maximal chains of `<Φ_k → Φ_n>`, refusing when the
/// projected count exceeds `cap`.
pub fn enumerate_layer_chains(p: &GradedPoset, k: usize, n: usize, cap: u64) -> Result<ChainSet> {
    let projected = layer_count_by_blocks(p, k, n)?;
    if projected > BigUint::from(cap) {
        return Err(Error::CapExceeded { projected, cap });
    }
    let mut chains = Vec::with_capacity(projected.to_usize().unwrap_or(0));
    let mut path = Vec::with_capacity(n - k + 1);
    for pos in 1..=p.size(k) {
        path.push(NodeRef::new(k, pos));
        extend(p, n, &mut path, &mut chains);
        path.pop();
    }
    Ok(ChainSet { k, n, chains })
}

fn extend(p: &GradedPoset, n: usize, path: &mut Vec<NodeRef>, out: &mut Vec<Chain>) {
    let last = *path.last().expect("nonempty");
    if last.level == n {
        out.push(Chain { nodes: path.clone() });
        return;
    }
    for next in p.up_neighbors(last).collect::<Vec<_>>() {
        path.push(next);
        extend(p, n, path, out);
        path.pop();
    }
}

/// Layer chain count by enumeration when it fits under `cap`, otherwise by
/// block products. The flag reports whether enumeration matched the block
/// product count (always true on the block-product route).
pub fn layer_count(p: &GradedPoset, k: usize, n: usize, cap: u64) -> Result<(BigUint, CountMethod, bool)> {
    let by_blocks = layer_count_by_blocks(p, k, n)?;
    match enumerate_layer_chains(p, k, n, cap) {
        Ok(set) => {
            let counted = BigUint::from(set.len());
            let agree = counted == by_blocks;
            Ok((counted, CountMethod::Enumeration, agree))
        }
        Err(Error::CapExceeded { .. }) => Ok((by_blocks, CountMethod::BlockProduct, true)),
        Err(e) => Err(e),
    }
}

/// Counts the maximal chains of the interval `[x, y]` by depth-first search.
pub fn count_interval_chains(p: &GradedPoset, x: NodeRef, y: NodeRef) -> Result<BigUint> {
    p.check_node(x)?;
    p.check_node(y)?;
    fn walk(p: &GradedPoset, at: NodeRef, target: NodeRef) -> BigUint {
        if at == target {
            return BigUint::one();
        }
        if at.level >= target.level {
            return BigUint::zero();
        }
        p.up_neighbors(at).map(|z| walk(p, z, target)).sum()
    }
    Ok(walk(p, x, y))
}

/// A point of the box `[k_F] x [(k+1)_F] x ... x [n_F]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HyperBoxPoint {
    pub start_level: usize,
    pub coords: Vec<usize>,
}

/// Within-level positions of a cobweb chain.
pub fn hyperbox_encode(chain: &Chain) -> HyperBoxPoint {
    HyperBoxPoint { start_level: chain.start_level(), coords: chain.nodes().iter().map(|x| x.pos).collect() }
}

/// Rebuilds the cobweb chain at the given box point.
pub fn hyperbox_decode(seq: &Sequence, point: &HyperBoxPoint) -> Result<Chain> {
    if point.start_level == 0 || point.coords.is_empty() {
        return Err(Error::Domain("box points need a start level >= 1 and at least one coordinate".into()));
    }
    let mut nodes = Vec::with_capacity(point.coords.len());
    for (offset, &pos) in point.coords.iter().enumerate() {
        let level = point.start_level + offset;
        if pos == 0 || BigUint::from(pos) > seq.term(level)? {
            return Err(Error::Domain(format!("coordinate {pos} is outside level {level}")));
        }
        nodes.push(NodeRef::new(level, pos));
    }
    Ok(Chain { nodes })
}

/// Both chain-count identities on a cobweb layer triple `r <= k <= s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkovReport {
    pub r: usize,
    pub k: usize,
    pub s: usize,
    /// `C^{r,k} C^{k,s}` and `k_F C^{r,s}`.
    pub shared: (BigUint, BigUint),
    /// `C^{r,k} C^{k+1,s}` and `C^{r,s}`, present when `k < s`.
    pub shifted: Option<(BigUint, BigUint)>,
    pub method: CountMethod,
    /// Enumeration agreed with block products for every count used.
    pub cross_checked: bool,
}

impl MarkovReport {
    pub fn holds(&self) -> bool {
        self.cross_checked
            && self.shared.0 == self.shared.1
            && self.shifted.as_ref().is_none_or(|(a, b)| a == b)
    }
}

pub fn check_markov(seq: &Sequence, r: usize, k: usize, s: usize, cap: u64) -> Result<MarkovReport> {
    if r == 0 || r > k || k > s {
        return Err(Error::Domain(format!("Markov identities need 1 <= r <= k <= s, got {r}, {k}, {s}")));
    }
    let p = GradedPoset::cobweb(seq, s)?;
    let mut method = CountMethod::Enumeration;
    let mut cross_checked = true;
    let mut count = |a: usize, b: usize| -> Result<BigUint> {
        let (c, m, agree) = layer_count(&p, a, b, cap)?;
        if m == CountMethod::BlockProduct {
            method = m;
        }
        cross_checked &= agree;
        Ok(c)
    };
    let rk = count(r, k)?;
    let ks = count(k, s)?;
    let rs = count(r, s)?;
    let shifted = if k < s { Some((&rk * count(k + 1, s)?, rs.clone())) } else { None };
    let shared = (&rk * &ks, seq.term(k)? * &rs);
    Ok(MarkovReport { r, k, s, shared, shifted, method, cross_checked })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem1Report {
    pub n: usize,
    pub k: usize,
    /// `|C_max <Φ_{k+1} → Φ_n>|`.
    pub layer_chains: BigUint,
    /// `fnomial(n, k) (n-k)_F!`.
    pub product: BigUint,
    /// `(n-k)_F!` and the maximal-chain count of the cobweb with `n-k` levels.
    pub factorial: BigUint,
    pub factorial_chains: BigUint,
    pub method: CountMethod,
    pub cross_checked: bool,
}

impl Theorem1Report {
    pub fn holds(&self) -> bool {
        self.cross_checked && self.layer_chains == self.product && self.factorial == self.factorial_chains
    }
}

/// Layer chain count against `fnomial(n, k) (n-k)_F!` on the cobweb with `n` levels.
pub fn theorem1_check(seq: &Sequence, n: usize, k: usize, cap: u64) -> Result<Theorem1Report> {
    if k >= n {
        return Err(Error::Domain(format!("need 0 <= k < n, got n={n}, k={k}")));
    }
    let fnomial = seq.fnomial(n, k)?;
    let coefficient = fnomial
        .to_integer()
        .ok_or_else(|| Error::Precondition(format!("F-nomial ({n},{k}) = {fnomial} is not an integer")))?
        .clone();
    let m = n - k;
    let factorial = seq.ffactorial(m)?;
    let p = GradedPoset::cobweb(seq, n)?;
    let (layer_chains, m1, a1) = layer_count(&p, k + 1, n, cap)?;
    let box_poset = GradedPoset::cobweb(seq, m)?;
    let (factorial_chains, m2, a2) = layer_count(&box_poset, 1, m, cap)?;
    let method = if m1 == CountMethod::BlockProduct || m2 == CountMethod::BlockProduct {
        CountMethod::BlockProduct
    } else {
        CountMethod::Enumeration
    };
    Ok(Theorem1Report {
        n,
        k,
        layer_chains,
        product: coefficient * &factorial,
        factorial,
        factorial_chains,
        method,
        cross_checked: a1 && a2,
    })
}

/// Sum of `[Max]` entries from the level-`k` node at `pos` to every level-`n` node.
fn max_row_sum(max: &crate::matrix::IncidenceMatrix, p: &GradedPoset, k: usize, pos: usize, n: usize) -> BigUint {
    let row = p.index_of(NodeRef::new(k, pos)).expect("valid node");
    let start = max.offset(n);
    let sum: BigInt = (start..start + p.size(n)).map(|j| max.get(row, j)).sum();
    sum.to_biguint().expect("chain counts are nonnegative")
}

/// `[Max]` row sums into `Φ_n`; `k = 0` stands for a virtual root below
/// level 1, so every level-1 node contributes.
fn max_sums(seq: &Sequence, k: usize, n: usize) -> Result<Vec<BigUint>> {
    let p = GradedPoset::cobweb(seq, n)?;
    let max = max_matrix(&p);
    if k == 0 {
        let total = (1..=p.size(1)).map(|pos| max_row_sum(&max, &p, 1, pos, n)).sum();
        return Ok(vec![total]);
    }
    Ok((1..=p.size(k)).map(|pos| max_row_sum(&max, &p, k, pos, n)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem3Report {
    pub k: usize,
    pub n: usize,
    /// `Σ_{i ∈ Φ_n} [Max]_{x,i}` for every level-`k` node `x`.
    pub sums: Vec<BigUint>,
    /// `n_F^(n-k falling)`.
    pub falling: BigUint,
    pub layer_chains: BigUint,
    pub method: CountMethod,
    pub cross_checked: bool,
}

impl Theorem3Report {
    pub fn holds(&self) -> bool {
        self.cross_checked && self.sums.iter().all(|s| *s == self.falling && *s == self.layer_chains)
    }
}

/// `[Max]` row sums into level `n` against the falling product and the chain
/// count of `<Φ_{k+1} → Φ_n>`. `k = 0` sums over all level-1 sources.
pub fn theorem3_check(seq: &Sequence, k: usize, n: usize, cap: u64) -> Result<Theorem3Report> {
    if k >= n {
        return Err(Error::Domain(format!("need 0 <= k < n, got k={k}, n={n}")));
    }
    let sums = max_sums(seq, k, n)?;
    let p = GradedPoset::cobweb(seq, n)?;
    let (layer_chains, method, cross_checked) = layer_count(&p, k + 1, n, cap)?;
    Ok(Theorem3Report { k, n, sums, falling: seq.falling(n, n - k)?, layer_chains, method, cross_checked })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViaMaxMode {
    /// `fnomial(n, n-k) = Σ_{i ∈ Φ_n} [Max]_{x_k,i} / (n-k)_F!`.
    Derived,
    /// `fnomial(l, k) = [Max]_{k-2,l+1} / (l-k)_F!` evaluated as written.
    Literal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViaMaxReport {
    Evaluated {
        numerator: BigUint,
        divisor: BigUint,
        /// `None` when the division is not exact.
        quotient: Option<BigUint>,
        expected: BigUint,
    },
    NotEvaluable(String),
}

impl ViaMaxReport {
    pub fn holds(&self) -> bool {
        matches!(self, ViaMaxReport::Evaluated { quotient: Some(q), expected, .. } if q == expected)
    }
}

fn divide(numerator: BigUint, divisor: BigUint, expected: BigUint) -> ViaMaxReport {
    let (q, r) = numerator.div_rem(&divisor);
    let quotient = r.is_zero().then_some(q);
    ViaMaxReport::Evaluated { numerator, divisor, quotient, expected }
}

fn integral_fnomial(seq: &Sequence, n: usize, k: usize) -> Result<BigUint> {
    let v = seq.fnomial(n, k)?;
    v.to_integer()
        .cloned()
        .ok_or_else(|| Error::Precondition(format!("F-nomial ({n},{k}) = {v} is not an integer")))
}

/// F-nomial coefficients recovered from `[Max]` on the cobweb.
pub fn fnomial_via_max(seq: &Sequence, n: usize, k: usize, mode: ViaMaxMode) -> Result<ViaMaxReport> {
    if k > n {
        return Err(Error::Domain(format!("need 0 <= k <= n, got n={n}, k={k}")));
    }
    match mode {
        ViaMaxMode::Derived => {
            let expected = integral_fnomial(seq, n, n - k)?;
            if n == 0 {
                return Ok(divide(BigUint::one(), BigUint::one(), expected));
            }
            let sum = max_sums(seq, k, n)?.swap_remove(0);
            Ok(divide(sum, seq.ffactorial(n - k)?, expected))
        }
        ViaMaxMode::Literal => {
            if k < 3 {
                return Ok(ViaMaxReport::NotEvaluable(format!("level k-2 = {} does not exist", k as i64 - 2)));
            }
            let expected = integral_fnomial(seq, n, k)?;
            let p = GradedPoset::cobweb(seq, n + 1)?;
            let max = max_matrix(&p);
            let x = p.index_of(NodeRef::new(k - 2, 1))?;
            let y = p.index_of(NodeRef::new(n + 1, 1))?;
            let entry = max.get(x, y).to_biguint().expect("chain counts are nonnegative");
            Ok(divide(entry, seq.ffactorial(n - k)?, expected))
        }
    }
}

/// Both sides of `[Max]_{k,n} = fnomial(n-1, k-2) (n-k+1)_F!` as written,
/// with `[Max]_{k,n}` read as the entry between the first nodes of levels
/// `k` and `n` of the cobweb. Requires `n >= k >= 2`.
pub fn corollary31_literal(seq: &Sequence, k: usize, n: usize) -> Result<(BigUint, BigUint)> {
    if k < 2 || n < k {
        return Err(Error::Domain(format!("need n >= k >= 2, got k={k}, n={n}")));
    }
    let p = GradedPoset::cobweb(seq, n)?;
    let max = max_matrix(&p);
    let entry = max.get(p.index_of(NodeRef::new(k, 1))?, p.index_of(NodeRef::new(n, 1))?);
    let coefficient = seq.fnomial(n - 1, k - 2)?;
    let rhs = coefficient.numerator() * seq.ffactorial(n - k + 1)? / coefficient.denominator();
    Ok((entry.to_biguint().expect("chain counts are nonnegative"), rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{Block, Density};
    use proptest::prelude::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn nat_cobweb(n: usize) -> GradedPoset {
        GradedPoset::cobweb(&Sequence::naturals(), n).unwrap()
    }

    #[test]
    fn layer_enumeration() {
        let p = nat_cobweb(4);
        let set = enumerate_layer_chains(&p, 2, 4, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(set.len(), 24);
        let mut sorted = set.chains.clone();
        sorted.sort();
        assert_eq!(sorted, set.chains);
        let singles = enumerate_layer_chains(&p, 3, 3, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(singles.len(), 3);
        let q = GradedPoset::new(vec![1, 2, 2], vec![Block::ones(1, 2), Block::identity(2)]).unwrap();
        assert_eq!(enumerate_layer_chains(&q, 2, 3, 10).unwrap().len(), 2);
        assert!(enumerate_layer_chains(&p, 3, 2, 10).is_err());
    }

    #[test]
    fn cap_reports_projection() {
        match enumerate_layer_chains(&nat_cobweb(4), 2, 4, 10) {
            Err(Error::CapExceeded { projected, cap }) => assert_eq!((projected, cap), (big(24), 10)),
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn chain_json() {
        let set = enumerate_layer_chains(&nat_cobweb(2), 1, 2, 10).unwrap();
        assert_eq!(set.to_json().to_string(), "[[[1,1],[2,1]],[[1,1],[2,2]]]");
        assert_eq!(count_json(2, 4, &big(24)).to_string(), r#"{"count":"24","k":2,"n":4}"#);
    }

    #[test]
    fn interval_counts() {
        let p = nat_cobweb(4);
        assert_eq!(count_interval_chains(&p, NodeRef::new(1, 1), NodeRef::new(4, 2)).unwrap(), big(6));
        assert_eq!(count_interval_chains(&p, NodeRef::new(3, 1), NodeRef::new(3, 1)).unwrap(), big(1));
        assert_eq!(count_interval_chains(&p, NodeRef::new(3, 1), NodeRef::new(3, 2)).unwrap(), big(0));
        assert!(count_interval_chains(&p, NodeRef::new(5, 1), NodeRef::new(3, 2)).is_err());
    }

    #[test]
    fn hyperbox() {
        let seq = Sequence::naturals();
        let set = enumerate_layer_chains(&nat_cobweb(4), 2, 4, 100).unwrap();
        let points: std::collections::HashSet<_> = set.chains.iter().map(hyperbox_encode).collect();
        assert_eq!(points.len(), 2 * 3 * 4);
        for c in &set.chains {
            assert_eq!(&hyperbox_decode(&seq, &hyperbox_encode(c)).unwrap(), c);
        }
        let single = HyperBoxPoint { start_level: 3, coords: vec![2] };
        assert_eq!(hyperbox_decode(&seq, &single).unwrap().nodes(), &[NodeRef::new(3, 2)]);
        assert!(hyperbox_decode(&seq, &HyperBoxPoint { start_level: 2, coords: vec![3] }).is_err());
    }

    #[test]
    fn chain_validation() {
        let q = GradedPoset::new(vec![1, 2, 2], vec![Block::ones(1, 2), Block::identity(2)]).unwrap();
        assert!(Chain::new(&q, vec![NodeRef::new(1, 1), NodeRef::new(2, 1), NodeRef::new(3, 1)]).is_ok());
        assert!(Chain::new(&q, vec![NodeRef::new(2, 1), NodeRef::new(3, 2)]).is_err());
        assert!(Chain::new(&q, vec![]).is_err());
    }

    #[test]
    fn markov_examples() {
        let nat = Sequence::naturals();
        let r = check_markov(&nat, 1, 2, 3, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(r.shared, (big(12), big(12)));
        assert!(r.holds());
        let r = check_markov(&nat, 1, 2, 4, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(r.shifted, Some((big(24), big(24))));
        let fib = Sequence::fibonacci();
        let r = check_markov(&fib, 1, 2, 5, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(r.shared.0, r.shared.1);
        assert!(check_markov(&nat, 3, 2, 4, 10).is_err());
    }

    #[test]
    fn layer_chain_count_examples() {
        let r = theorem1_check(&Sequence::naturals(), 4, 2, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!((r.layer_chains.clone(), r.product.clone()), (big(12), big(12)));
        assert!(r.holds());
        let r = theorem1_check(&Sequence::fibonacci(), 4, 2, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(r.layer_chains, big(6));
        assert!(r.holds());
        let r = theorem1_check(&Sequence::fibonacci(), 6, 5, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(r.layer_chains, big(8));
        let bad = Sequence::explicit([2u32, 3, 2]).unwrap();
        assert!(matches!(theorem1_check(&bad, 2, 1, 10), Err(Error::Precondition(_))));
    }

    #[test]
    fn max_row_sum_examples() {
        let r = theorem3_check(&Sequence::naturals(), 1, 4, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(r.sums, vec![big(24)]);
        assert!(r.holds());
        let r = theorem3_check(&Sequence::fibonacci_rooted(), 3, 6, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(r.falling, big(30));
        assert!(r.holds());
        let r = theorem3_check(&Sequence::naturals(), 4, 5, 1).unwrap();
        assert_eq!(r.method, CountMethod::BlockProduct);
        assert!(r.holds());
    }

    #[test]
    fn via_max() {
        let nat = Sequence::naturals();
        match fnomial_via_max(&nat, 4, 2, ViaMaxMode::Derived).unwrap() {
            ViaMaxReport::Evaluated { numerator, divisor, quotient, expected } => {
                assert_eq!((numerator, divisor, quotient, expected), (big(12), big(2), Some(big(6)), big(6)));
            }
            other => panic!("{other:?}"),
        }
        assert!(fnomial_via_max(&nat, 5, 0, ViaMaxMode::Derived).unwrap().holds());
        let literal = fnomial_via_max(&nat, 4, 3, ViaMaxMode::Literal).unwrap();
        assert!(!literal.holds());
        match literal {
            ViaMaxReport::Evaluated { numerator, expected, .. } => assert_eq!((numerator, expected), (big(24), big(4))),
            other => panic!("{other:?}"),
        }
        assert!(matches!(fnomial_via_max(&nat, 4, 2, ViaMaxMode::Literal).unwrap(), ViaMaxReport::NotEvaluable(_)));
    }

    #[test]
    fn shifted_index_form_sides() {
        let (lhs, rhs) = corollary31_literal(&Sequence::naturals(), 3, 5).unwrap();
        assert_eq!((lhs, rhs), (big(4), big(24)));
    }

    fn arb_poset() -> impl Strategy<Value = GradedPoset> {
        (prop::collection::vec(1usize..5, 1..7), any::<u64>(), 1u64..=4)
            .prop_map(|(sizes, seed, num)| GradedPoset::random_with_sizes(&sizes, Density::new(num, 4).unwrap(), seed, true).unwrap())
    }

    proptest! {
        #[test]
        fn interval_counts_match_max(p in arb_poset()) {
            let max = max_matrix(&p);
            let nodes: Vec<_> = p.nodes().collect();
            for (i, &x) in nodes.iter().enumerate() {
                for (j, &y) in nodes.iter().enumerate() {
                    let brute = BigInt::from(count_interval_chains(&p, x, y).unwrap());
                    prop_assert_eq!(max.get(i, j), &brute);
                }
            }
        }

        #[test]
        fn cobweb_layer_counts_are_products(n in 1usize..6, k in 1usize..6, which in 0usize..3) {
            prop_assume!(k <= n);
            let seq = [Sequence::naturals(), Sequence::fibonacci(), Sequence::constant(3).unwrap()][which].clone();
            let p = GradedPoset::cobweb(&seq, n).unwrap();
            let set = enumerate_layer_chains(&p, k, n, DEFAULT_ENUMERATION_CAP).unwrap();
            let product: BigUint = (k..=n).map(|i| seq.term(i).unwrap()).product();
            prop_assert_eq!(BigUint::from(set.len()), product);
            prop_assert_eq!(enumerate_layer_chains(&p, k, n, DEFAULT_ENUMERATION_CAP).unwrap(), set.clone());
            for c in &set.chains {
                prop_assert_eq!(&hyperbox_decode(&seq, &hyperbox_encode(c)).unwrap(), c);
            }
        }
    }
}
