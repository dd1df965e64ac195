//! Incidence-algebra elements of a graded poset over the integers.
//!
//! The zeta matrix has four constructions (Boolean closure of the cover
//! relation plus three closed formulas valid on cobwebs) and the Möbius
//! matrix has three (triangular inversion, the interval recurrence and the
//! per-level coding formula). They are kept independent so each can check
//! the others.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::fsequence::Sequence;
use crate::matrix::{widen, BitMatrix, IncidenceMatrix, IntMatrix, Scalar};
use crate::poset::{GradedPoset, NodeRef};

/// Reflexive-transitive closure of the cover relation: the OR of the Boolean
/// powers `κ^0 .. κ^(n-1)`.
pub fn zeta_closure(p: &GradedPoset) -> IncidenceMatrix {
    let cover = BitMatrix::from_int(p.cover_matrix().matrix());
    let n = p.node_count();
    let mut reach = BitMatrix::identity(n);
    let mut power = BitMatrix::identity(n);
    for _ in 1..p.levels() {
        power = power.bool_mul(&cover);
        if power.is_zero() {
            break;
        }
        reach.or_assign(&power);
    }
    IncidenceMatrix::new(p.sizes().to_vec(), reach.to_int()).expect("square by construction")
}

fn zero_one(b: bool) -> BigInt {
    BigInt::from(u8::from(b))
}

fn cobweb_sizes(seq: &Sequence, n: usize) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::Domain("level count must be >= 1".into()));
    }
    seq.level_sizes(n)
}

/// Prefix sums `S(0) = 0, S(1), ..., S(n)` of the level sizes.
fn prefix_sums(sizes: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(sizes.len() + 1);
    out.push(0);
    for s in sizes {
        out.push(out.last().unwrap() + s);
    }
    out
}

/// Cobweb zeta from the delta-sum form `ζ = ζ1 - ζ0` over linear labels:
/// `ζ1(x, y) = Σ_{k≥0} δ(x+k, y)` and
/// `ζ0(x, y) = Σ_s Σ_{k=1}^{s_F} δ(x, S(s-1)+k) Σ_{r=1}^{s_F-k} δ(x+r, y)`.
pub fn zeta_formula_kwasniewski(seq: &Sequence, n: usize) -> Result<IncidenceMatrix> {
    let sizes = cobweb_sizes(seq, n)?;
    let cum = prefix_sums(&sizes);
    let total = cum[n];
    let mut m = IntMatrix::zeros(total, total);
    for x in 1..=total {
        let mut row = vec![0i32; total + 1];
        for v in &mut row[x..] {
            *v += 1;
        }
        for s in 1..=n {
            for k in 1..=sizes[s - 1] {
                if x != cum[s - 1] + k {
                    continue;
                }
                for r in 1..=sizes[s - 1] - k {
                    row[x + r] -= 1;
                }
            }
        }
        for (y, &v) in row.iter().enumerate().skip(1) {
            m.set(x - 1, y - 1, BigInt::from(v));
        }
    }
    IncidenceMatrix::new(sizes, m)
}

/// Cobweb zeta in grid coordinates:
/// `ζ(<s,t>, <u,v>) = δ(s,u) δ(t,v) + Σ_{k≥1} δ(t+k, v)` with `t`, `v` levels.
pub fn zeta_formula_krot(seq: &Sequence, n: usize) -> Result<IncidenceMatrix> {
    let sizes = cobweb_sizes(seq, n)?;
    let p = GradedPoset::cobweb_from_sizes(&sizes)?;
    let nodes: Vec<NodeRef> = p.nodes().collect();
    let m = IntMatrix::from_fn(nodes.len(), nodes.len(), |i, j| {
        let (x, y) = (nodes[i], nodes[j]);
        let same = u8::from(x.pos == y.pos && x.level == y.level);
        let above: u8 = (1..n).map(|k| u8::from(x.level + k == y.level)).sum();
        BigInt::from(same + above)
    });
    IncidenceMatrix::new(sizes, m)
}

/// Cobweb zeta from cumulative sums over 1-based labels:
/// `ζ(x, y) = [x ≤ y] - [x < y] Σ_{m≥0} [x > S(m)] [y ≤ S(m+1)]`.
pub fn zeta_formula_dziemianczuk(seq: &Sequence, n: usize) -> Result<IncidenceMatrix> {
    let sizes = cobweb_sizes(seq, n)?;
    let cum = prefix_sums(&sizes);
    let total = cum[n];
    let m = IntMatrix::from_fn(total, total, |i, j| {
        let (x, y) = (i + 1, j + 1);
        let cut: i64 = (0..n).map(|m| i64::from(x > cum[m] && y <= cum[m + 1])).sum();
        BigInt::from(i64::from(x <= y) - i64::from(x < y) * cut)
    });
    IncidenceMatrix::new(sizes, m)
}

/// Exact inverse of a zeta matrix by back-substitution.
pub fn mobius_inverse(zeta: &IncidenceMatrix) -> Result<IncidenceMatrix> {
    IncidenceMatrix::new(zeta.sizes().to_vec(), zeta.matrix().inverse_unit_upper()?)
}

fn recurrence_kernel<T: Scalar>(order: &BitMatrix) -> Option<Vec<T>> {
    let n = order.dim();
    let mut mu = vec![T::zero_value(); n * n];
    for x in 0..n {
        mu[x * n + x] = T::one_value();
        for y in x + 1..n {
            if !order.get(x, y) {
                continue;
            }
            let mut sum = T::zero_value();
            for z in x..y {
                if order.get(x, z) && order.get(z, y) {
                    sum = sum.try_add(&mu[x * n + z])?;
                }
            }
            mu[x * n + y] = T::zero_value().try_sub(&sum)?;
        }
    }
    Some(mu)
}

/// Möbius function from `μ(x,x) = 1` and `μ(x,y) = -Σ_{x≤z<y} μ(x,z)`, with
/// intervals read off the order relation.
pub fn mobius_recurrence(p: &GradedPoset) -> IncidenceMatrix {
    let order = BitMatrix::from_int(zeta_closure(p).matrix());
    let n = order.dim();
    let data = recurrence_kernel::<i128>(&order)
        .map(widen)
        .unwrap_or_else(|| recurrence_kernel::<BigInt>(&order).expect("unbounded arithmetic cannot overflow"));
    IncidenceMatrix::new(p.sizes().to_vec(), IntMatrix::new(n, n, data).expect("square"))
        .expect("dimensions match by construction")
}

/// Per-level-pair coefficients of the cobweb Möbius function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodingMatrix {
    n: usize,
    c: IntMatrix,
}

impl CodingMatrix {
    pub fn levels(&self) -> usize {
        self.n
    }

    /// Coefficient for 1-based levels `r`, `s`.
    pub fn get(&self, r: usize, s: usize) -> &BigInt {
        self.c.get(r - 1, s - 1)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.c
    }

    /// Entries `c[r, r..=n]` of row `r`.
    pub fn row_from_diagonal(&self, r: usize) -> Vec<BigInt> {
        (r..=self.n).map(|s| self.get(r, s).clone()).collect()
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("c".into(), self.c.to_json());
        map.insert("n".into(), Value::from(self.n));
        Value::Object(map)
    }

    pub fn to_json_string(&self) -> String {
        self.to_json().to_string()
    }
}

fn kroton_product(term: &dyn Fn(usize) -> Result<BigUint>, r: usize, s: usize) -> Result<BigUint> {
    let mut acc = BigUint::one();
    for i in r + 1..s {
        acc *= term(i)? - 1u32;
    }
    Ok(acc)
}

fn coding_from_terms(n: usize, term: &dyn Fn(usize) -> Result<BigUint>) -> Result<CodingMatrix> {
    let mut c = IntMatrix::zeros(n, n);
    for r in 1..=n {
        c.set(r - 1, r - 1, BigInt::one());
        for s in r + 1..=n {
            let magnitude = BigInt::from(kroton_product(term, r, s)?);
            c.set(r - 1, s - 1, if (s - r) % 2 == 0 { magnitude } else { -magnitude });
        }
    }
    Ok(CodingMatrix { n, c })
}

/// `c[r,s] = [r=s] + [s>r] (-1)^(s-r) Π_{i=r+1}^{s-1} (i_F - 1)`.
pub fn coding_matrix(seq: &Sequence, n: usize) -> Result<CodingMatrix> {
    coding_from_terms(n, &|i| seq.term(i))
}

/// Coding matrix whose sequence is the level sizes of `p`.
pub fn coding_matrix_for(p: &GradedPoset) -> CodingMatrix {
    let sizes = p.sizes();
    coding_from_terms(sizes.len(), &|i| Ok(BigUint::from(sizes[i - 1]))).expect("sizes are in range")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KrotonValue {
    pub r: usize,
    pub s: usize,
    pub value: BigUint,
}

fn check_kroton_levels(r: usize, s: usize) -> Result<()> {
    if r == 0 || s <= r {
        return Err(Error::Domain(format!("kroton needs 1 <= r < s, got r={r}, s={s}")));
    }
    Ok(())
}

/// `K_s(r_F) = Π_{i=r+1}^{s-1} (i_F - 1)`.
pub fn kroton(seq: &Sequence, r: usize, s: usize) -> Result<KrotonValue> {
    check_kroton_levels(r, s)?;
    Ok(KrotonValue { r, s, value: kroton_product(&|i| seq.term(i), r, s)? })
}

/// Kroton value from `K_{r+1} = 1` and `K_{t+1} = K_t (t_F - 1)`.
pub fn kroton_recurrence(seq: &Sequence, r: usize, s: usize) -> Result<KrotonValue> {
    check_kroton_levels(r, s)?;
    let mut value = BigUint::one();
    for t in r + 1..s {
        value *= seq.term(t)? - 1u32;
    }
    Ok(KrotonValue { r, s, value })
}

/// Both sides of an alternating-sum identity for one `(r, s)` pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingCheck {
    pub r: usize,
    pub s: usize,
    pub kroton: BigInt,
    pub alternating_sum: BigInt,
}

impl AlternatingCheck {
    pub fn holds(&self) -> bool {
        self.kroton == self.alternating_sum
    }
}

fn kroton_or_one(seq: &Sequence, r: usize, i: usize) -> Result<BigInt> {
    if i == r {
        Ok(BigInt::one())
    } else {
        Ok(BigInt::from(kroton(seq, r, i)?.value))
    }
}

fn alternating(seq: &Sequence, r: usize, s: usize, weight: impl Fn(usize) -> Result<BigInt>) -> Result<AlternatingCheck> {
    check_kroton_levels(r, s)?;
    let mut sum = BigInt::zero();
    for i in r..s {
        let term = kroton_or_one(seq, r, i)? * weight(i)?;
        if (s - i).is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(AlternatingCheck { r, s, kroton: BigInt::from(kroton(seq, r, s)?.value), alternating_sum: -sum })
}

/// `K_{r,s}` against `-Σ_{r≤i<s} (-1)^(s-i) K_{r,i}` with `K_{r,r} = 1`, unweighted.
pub fn kroton_alternating_literal(seq: &Sequence, r: usize, s: usize) -> Result<AlternatingCheck> {
    alternating(seq, r, s, |_| Ok(BigInt::one()))
}

/// `K_{r,s}` against `-Σ_{r≤i<s} (-1)^(s-i) w_i K_{r,i}` where `w_i` counts
/// the level-`i` nodes of a cobweb interval `[x, y)` with `x` on level `r`:
/// `w_r = 1` and `w_i = i_F` otherwise.
pub fn kroton_alternating_weighted(seq: &Sequence, r: usize, s: usize) -> Result<AlternatingCheck> {
    alternating(seq, r, s, |i| if i == r { Ok(BigInt::one()) } else { Ok(BigInt::from(seq.term(i)?)) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MobiusMode {
    /// Cobweb posets only.
    Strict,
    /// Any graded poset; disagreements with inversion are reported.
    Conjecture,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    /// 0-based matrix coordinates.
    pub row: usize,
    pub col: usize,
    /// 1-based levels of the block containing the entry.
    pub block: (usize, usize),
    pub exact: BigInt,
    pub candidate: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormReport {
    pub matrix: IncidenceMatrix,
    pub agrees_with_inversion: bool,
    pub first_mismatch: Option<Mismatch>,
}

/// Möbius candidate with block `(r, s)` equal to `c[r,s]` times the 0/1
/// reachability pattern of `B_r ... B_{s-1}`, using the level sizes of `p` as
/// the sequence. On cobwebs the pattern is all-ones.
pub fn mobius_closed_form(p: &GradedPoset, mode: MobiusMode) -> Result<ClosedFormReport> {
    if mode == MobiusMode::Strict && !p.is_cobweb() {
        return Err(Error::Precondition("strict closed-form Möbius requires a cobweb poset".into()));
    }
    let coding = coding_matrix_for(p);
    let n = p.node_count();
    let mut m = IntMatrix::identity(n);
    let offsets = prefix_sums(p.sizes());
    for r in 1..=p.levels() {
        for s in r + 1..=p.levels() {
            let product = p.block_product(r, s)?;
            let c = coding.get(r, s);
            for i in 0..p.size(r) {
                for j in 0..p.size(s) {
                    if !product.get(i, j).is_zero() {
                        m.set(offsets[r - 1] + i, offsets[s - 1] + j, c.clone());
                    }
                }
            }
        }
    }
    let candidate = IncidenceMatrix::new(p.sizes().to_vec(), m)?;
    let exact = mobius_inverse(&zeta_closure(p))?;
    let first_mismatch = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find_map(|(i, j)| {
        (exact.get(i, j) != candidate.get(i, j)).then(|| Mismatch {
            row: i,
            col: j,
            block: (exact.level_of(i), exact.level_of(j)),
            exact: exact.get(i, j).clone(),
            candidate: candidate.get(i, j).clone(),
        })
    });
    Ok(ClosedFormReport { matrix: candidate, agrees_with_inversion: first_mismatch.is_none(), first_mismatch })
}

/// Cobweb Möbius function in grid coordinates `x = <pos, level>`:
/// `δδ - δ(t+1, v) + Σ_{k≥2} δ(t+k, v) (-1)^k Π_{i=t+1}^{v-1} (i_F - 1)`.
pub fn krot_mobius(seq: &Sequence, x: NodeRef, y: NodeRef) -> Result<BigInt> {
    for node in [x, y] {
        if node.level == 0 || node.pos == 0 || BigUint::from(node.pos) > seq.term(node.level)? {
            return Err(Error::Domain(format!("grid coordinate {node} is outside the cobweb")));
        }
    }
    let (t, v) = (x.level, y.level);
    let mut value = BigInt::from(u8::from(x == y));
    if v == t + 1 {
        value -= 1;
    }
    if v >= t + 2 {
        let k = v - t;
        let product = BigInt::from(kroton_product(&|i| seq.term(i), t, v)?);
        value += if k % 2 == 0 { product } else { -product };
    }
    Ok(value)
}

/// Reflexive cover relation `η = κ + δ`.
pub fn eta(p: &GradedPoset) -> IncidenceMatrix {
    let k = p.cover_matrix();
    let m = k.matrix().add(&IntMatrix::identity(p.node_count())).expect("same shape");
    IncidenceMatrix::new(p.sizes().to_vec(), m).expect("same shape")
}

fn power_sum(p: &GradedPoset, step: IntMatrix) -> IncidenceMatrix {
    let n = p.node_count();
    let mut acc = IntMatrix::identity(n);
    let mut power = IntMatrix::identity(n);
    for _ in 1..p.levels() {
        power = power.mul(&step).expect("same shape");
        acc = acc.add(&power).expect("same shape");
    }
    IncidenceMatrix::new(p.sizes().to_vec(), acc).expect("same shape")
}

/// `η^{-1} = Σ_{k≥0} (-κ)^k`, a finite sum since `κ` is nilpotent.
pub fn eta_inverse(p: &GradedPoset) -> IncidenceMatrix {
    power_sum(p, p.cover_matrix().matrix().neg())
}

/// `[Max] = Σ_{k≥0} κ^k`; entry `(x, y)` counts the maximal chains of `[x, y]`.
pub fn max_matrix(p: &GradedPoset) -> IncidenceMatrix {
    power_sum(p, p.cover_matrix().into_matrix())
}

/// Entrywise indicator of positive entries.
pub fn l_logic(m: &IncidenceMatrix) -> Result<IncidenceMatrix> {
    if let Some(pos) = m.matrix().data().iter().position(Signed::is_negative) {
        let n = m.dim();
        return Err(Error::Domain(format!(
            "L-logic is defined on nonnegative matrices; entry ({},{}) is negative",
            pos / n,
            pos % n
        )));
    }
    let out = IntMatrix::from_fn(m.dim(), m.dim(), |i, j| zero_one(m.get(i, j).is_positive()));
    IncidenceMatrix::new(m.sizes().to_vec(), out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockStructureReport {
    pub ok: bool,
    /// First offending 0-based coordinate in row-major order.
    pub first_offense: Option<(usize, usize)>,
}

/// Checks that every block below the block diagonal is zero and every
/// diagonal block is a diagonal matrix.
pub fn validate_block_structure(m: &IncidenceMatrix) -> BlockStructureReport {
    let n = m.dim();
    let levels: Vec<usize> = (0..n).map(|i| m.level_of(i)).collect();
    let first_offense = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| {
        let below = levels[j] < levels[i];
        let inside_diagonal_block = levels[j] == levels[i] && i != j;
        (below || inside_diagonal_block) && !m.get(i, j).is_zero()
    });
    BlockStructureReport { ok: first_offense.is_none(), first_offense }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{Block, Density};
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn fixture_sequences() -> Vec<Sequence> {
        vec![
            Sequence::naturals(),
            Sequence::fibonacci(),
            Sequence::fibonacci_rooted(),
            Sequence::gaussian(2).unwrap(),
            Sequence::constant(3).unwrap(),
        ]
    }

    /// The 5-node poset: one root, two middle nodes, and a perfect matching on top.
    fn counterexample() -> GradedPoset {
        GradedPoset::new(vec![1, 2, 2], vec![Block::ones(1, 2), Block::identity(2)]).unwrap()
    }

    /// Comparability by explicit upward search, independent of matrix products.
    fn reachable(p: &GradedPoset, x: NodeRef, y: NodeRef) -> bool {
        x == y || p.up_neighbors(x).any(|z| z.level <= y.level && reachable(p, z, y))
    }

    #[test]
    fn closure_single_level_is_identity() {
        let p = GradedPoset::cobweb_from_sizes(&[3]).unwrap();
        assert!(zeta_closure(&p).is_identity());
    }

    #[test]
    fn closure_matches_search() {
        let p = GradedPoset::random(&Sequence::naturals(), 5, Density::new(1, 2).unwrap(), 3, true).unwrap();
        let z = zeta_closure(&p);
        let nodes: Vec<_> = p.nodes().collect();
        for (i, &x) in nodes.iter().enumerate() {
            for (j, &y) in nodes.iter().enumerate() {
                assert_eq!(z.get(i, j), &zero_one(reachable(&p, x, y)), "{x} {y}");
            }
        }
    }

    #[test]
    fn zeta_formula_spot_values() {
        let nat = Sequence::naturals();
        let krot = zeta_formula_krot(&nat, 5).unwrap();
        // <2,3> and <3,3> are distinct nodes of level 3
        assert!(krot.get(4, 5).is_zero());
        // level 2 to level 5
        assert!(krot.get(1, 12).is_one());
        let dz = zeta_formula_dziemianczuk(&nat, 5).unwrap();
        assert!(dz.get(3, 3).is_one());
        assert!(dz.get(3, 5).is_zero());
        let kw = zeta_formula_kwasniewski(&nat, 5).unwrap();
        assert!((0..15).all(|i| kw.get(i, i).is_one()));
    }

    #[test]
    fn zeta_formulas_reject_zero_levels() {
        assert!(zeta_formula_krot(&Sequence::naturals(), 0).is_err());
        assert!(zeta_formula_dziemianczuk(&Sequence::naturals(), 0).is_err());
        assert!(zeta_formula_kwasniewski(&Sequence::naturals(), 0).is_err());
    }

    #[test]
    fn zeta_formulas_agree_with_closure() {
        for seq in fixture_sequences() {
            for n in 1..=6 {
                let closure = zeta_closure(&GradedPoset::cobweb(&seq, n).unwrap());
                assert_eq!(zeta_formula_kwasniewski(&seq, n).unwrap(), closure, "{seq} n={n}");
                assert_eq!(zeta_formula_krot(&seq, n).unwrap(), closure, "{seq} n={n}");
                assert_eq!(zeta_formula_dziemianczuk(&seq, n).unwrap(), closure, "{seq} n={n}");
            }
        }
    }

    #[test]
    fn mobius_identity_and_covers() {
        let id = IncidenceMatrix::identity(&[1, 2]);
        assert!(mobius_inverse(&id).unwrap().is_identity());
        let p = GradedPoset::cobweb(&Sequence::fibonacci(), 5).unwrap();
        let mu = mobius_recurrence(&p);
        let k = p.cover_matrix();
        for i in 0..p.node_count() {
            assert!(mu.get(i, i).is_one());
            for j in 0..p.node_count() {
                if k.get(i, j).is_one() {
                    assert_eq!(mu.get(i, j), &BigInt::from(-1));
                }
            }
        }
        let bad = IncidenceMatrix::new(vec![1, 1], IntMatrix::from_rows(&[vec![1, 1], vec![0, 2]]).unwrap()).unwrap();
        assert!(matches!(mobius_inverse(&bad), Err(Error::Domain(_))));
    }

    #[test]
    fn coding_matrix_rows() {
        let c = coding_matrix(&Sequence::naturals(), 6).unwrap();
        assert_eq!(c.row_from_diagonal(1), ints(&[1, -1, 1, -2, 6, -24]));
        assert_eq!(c.row_from_diagonal(2), ints(&[1, -1, 2, -6, 24]));
        assert_eq!(c.row_from_diagonal(3), ints(&[1, -1, 3, -12]));
        assert_eq!(c.row_from_diagonal(4), ints(&[1, -1, 4]));
        assert_eq!(c.row_from_diagonal(6), ints(&[1]));
        let ex11 = coding_matrix(&Sequence::explicit([1u32, 1, 3, 3, 3, 3]).unwrap(), 6).unwrap();
        assert_eq!(ex11.row_from_diagonal(2), ints(&[1, -1, 2, -4, 8]));
        let ex12 = coding_matrix(&Sequence::explicit([1u32, 3, 3, 3, 3, 3]).unwrap(), 6).unwrap();
        assert_eq!(ex12.row_from_diagonal(1), ints(&[1, -1, 2, -4, 8, -16]));
        let one = coding_matrix(&Sequence::naturals(), 1).unwrap();
        assert_eq!(one.to_json_string(), r#"{"c":[[1]],"n":1}"#);
    }

    #[test]
    fn kroton_values() {
        assert_eq!(kroton(&Sequence::naturals(), 1, 5).unwrap().value, BigUint::from(6u32));
        assert_eq!(kroton(&Sequence::fibonacci_rooted(), 3, 7).unwrap().value, BigUint::from(8u32));
        assert_eq!(kroton(&Sequence::gaussian(2).unwrap(), 4, 5).unwrap().value, BigUint::one());
        assert!(kroton(&Sequence::naturals(), 3, 3).is_err());
        assert!(kroton_recurrence(&Sequence::naturals(), 4, 2).is_err());
    }

    #[test]
    fn alternating_forms() {
        let nat = Sequence::naturals();
        let literal = kroton_alternating_literal(&nat, 1, 3).unwrap();
        assert_eq!((literal.kroton.clone(), literal.alternating_sum.clone()), (BigInt::from(1), BigInt::from(0)));
        assert!(!literal.holds());
        assert!(kroton_alternating_literal(&nat, 2, 3).unwrap().holds());
        for r in 1..8 {
            for s in r + 1..10 {
                assert!(kroton_alternating_weighted(&nat, r, s).unwrap().holds());
            }
        }
    }

    #[test]
    fn closed_form_counterexample() {
        let p = counterexample();
        assert!(matches!(mobius_closed_form(&p, MobiusMode::Strict), Err(Error::Precondition(_))));
        let report = mobius_closed_form(&p, MobiusMode::Conjecture).unwrap();
        assert!(!report.agrees_with_inversion);
        let mm = report.first_mismatch.unwrap();
        assert_eq!((mm.row, mm.col, mm.block), (0, 3, (1, 3)));
        assert_eq!((mm.exact, mm.candidate), (BigInt::zero(), BigInt::one()));
    }

    #[test]
    fn krot_mobius_values() {
        let fib = Sequence::fibonacci();
        assert!(krot_mobius(&fib, NodeRef::new(3, 2), NodeRef::new(3, 2)).unwrap().is_one());
        assert_eq!(krot_mobius(&fib, NodeRef::new(3, 1), NodeRef::new(4, 3)).unwrap(), BigInt::from(-1));
        // <1,2> has only one node
        assert!(krot_mobius(&fib, NodeRef::new(1, 1), NodeRef::new(2, 2)).is_err());
        assert!(krot_mobius(&fib, NodeRef::new(0, 1), NodeRef::new(2, 1)).is_err());
    }

    #[test]
    fn eta_inverse_blocks() {
        let p = GradedPoset::random(&Sequence::naturals(), 5, Density::new(3, 5).unwrap(), 9, true).unwrap();
        let inv = eta_inverse(&p);
        assert!(eta(&p).mul(&inv).unwrap().is_identity());
        for r in 1..p.levels() {
            assert_eq!(inv.block(r, r + 1), p.block(r).to_int().neg());
            if r + 2 <= p.levels() {
                assert_eq!(inv.block(r, r + 2), p.block_product(r, r + 2).unwrap());
            }
        }
    }

    #[test]
    fn max_matrix_values() {
        let p = GradedPoset::cobweb(&Sequence::naturals(), 4).unwrap();
        let max = max_matrix(&p);
        for j in 6..10 {
            assert_eq!(max.get(0, j), &BigInt::from(6));
        }
        assert!((0..10).all(|i| max.get(i, i).is_one()));
    }

    #[test]
    fn l_logic_cases() {
        let id = IncidenceMatrix::identity(&[2, 1]);
        assert_eq!(l_logic(&id).unwrap(), id);
        let neg = IncidenceMatrix::new(vec![1, 1], IntMatrix::from_rows(&[vec![1, -1], vec![0, 1]]).unwrap()).unwrap();
        assert!(matches!(l_logic(&neg), Err(Error::Domain(_))));
    }

    #[test]
    fn block_structure_validation() {
        let p = GradedPoset::cobweb(&Sequence::naturals(), 3).unwrap();
        assert!(validate_block_structure(&zeta_closure(&p)).ok);
        let mut below = IntMatrix::identity(6);
        below.set(3, 1, BigInt::one());
        let r = validate_block_structure(&IncidenceMatrix::new(vec![1, 2, 3], below).unwrap());
        assert_eq!(r.first_offense, Some((3, 1)));
        let mut inside = IntMatrix::identity(6);
        inside.set(3, 5, BigInt::from(7));
        let r = validate_block_structure(&IncidenceMatrix::new(vec![1, 2, 3], inside).unwrap());
        assert_eq!((r.ok, r.first_offense), (false, Some((3, 5))));
    }

    fn arb_poset() -> impl Strategy<Value = GradedPoset> {
        (prop::collection::vec(1usize..5, 1..6), any::<u64>(), 1u64..=5, any::<bool>()).prop_map(
            |(sizes, seed, num, allow_mute)| {
                GradedPoset::random_with_sizes(&sizes, Density::new(num, 5).unwrap(), seed, allow_mute).unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn mobius_routes_agree(p in arb_poset()) {
            let zeta = zeta_closure(&p);
            let mu = mobius_inverse(&zeta).unwrap();
            prop_assert!(mu.mul(&zeta).unwrap().is_identity());
            prop_assert!(zeta.mul(&mu).unwrap().is_identity());
            prop_assert_eq!(&mobius_recurrence(&p), &mu);
            prop_assert!(validate_block_structure(&mu).ok);
        }

        #[test]
        fn max_and_eta_identities(p in arb_poset()) {
            let max = max_matrix(&p);
            prop_assert_eq!(l_logic(&max).unwrap(), zeta_closure(&p));
            let delta_minus_kappa = eta_inverse(&p).matrix().clone();
            let dk = IntMatrix::identity(p.node_count()).sub(p.cover_matrix().matrix()).unwrap();
            prop_assert!(dk.mul(max.matrix()).unwrap().is_identity());
            prop_assert!(eta(&p).matrix().mul(&delta_minus_kappa).unwrap().is_identity());
            for r in 1..p.levels() {
                for s in r + 1..=p.levels() {
                    let sign = if (s - r) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                    prop_assert_eq!(eta_inverse(&p).block(r, s), p.block_product(r, s).unwrap().scale(&sign));
                }
            }
        }

        #[test]
        fn cobweb_sign_pattern(n in 1usize..7, which in 0usize..5) {
            let seq = fixture_sequences().swap_remove(which);
            let p = GradedPoset::cobweb(&seq, n).unwrap();
            let mu = mobius_inverse(&zeta_closure(&p)).unwrap();
            for i in 0..mu.dim() {
                for j in 0..mu.dim() {
                    let v = mu.get(i, j);
                    if !v.is_zero() {
                        let even = (mu.level_of(j) + 2 - mu.level_of(i)).is_multiple_of(2);
                        prop_assert_eq!(v.is_positive(), even);
                    }
                }
            }
            let report = mobius_closed_form(&p, MobiusMode::Strict).unwrap();
            prop_assert!(report.agrees_with_inversion);
            prop_assert_eq!(&report.matrix, &mobius_recurrence(&p));
        }

        #[test]
        fn kroton_routes_agree(r in 1usize..12, gap in 1usize..8, which in 0usize..5) {
            let seq = fixture_sequences().swap_remove(which);
            let s = r + gap;
            prop_assert_eq!(kroton(&seq, r, s).unwrap(), kroton_recurrence(&seq, r, s).unwrap());
            prop_assert!(kroton_alternating_weighted(&seq, r, s).unwrap().holds());
            let c = coding_matrix(&seq, s).unwrap();
            prop_assert_eq!(c.get(r, s).magnitude(), &kroton(&seq, r, s).unwrap().value);
        }
    }
}
