//! F-sequences in upside-down notation (`k_F` is the size of level `k`) and the
//! scalar combinatorics built on them: cumulative sums, F-factorials, falling
//! products and F-nomial coefficients.
//!
//! Levels are 1-based throughout the crate. All arithmetic is on unbounded
//! integers; F-nomials are exact reduced fractions whose integrality is
//! computed, never assumed.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SequenceKind {
    /// `1, 2, 3, ...`
    Naturals,
    /// `1, 1, 2, 3, 5, 8, ...`
    Fibonacci,
    /// Gauss q-integers `n_q = 1 + q + ... + q^(n-1)`.
    Gaussian { q: u64 },
    Constant { c: u64 },
    Explicit(Vec<BigUint>),
}

/// A natural-number valued sequence denominating the levels of a graded poset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sequence {
    kind: SequenceKind,
    with_root: bool,
}

impl Sequence {
    pub fn new(kind: SequenceKind, with_root: bool) -> Result<Self> {
        match &kind {
            SequenceKind::Gaussian { q } if *q < 2 => {
                return Err(Error::Domain(format!("gaussian base must be >= 2, got {q}")))
            }
            SequenceKind::Constant { c } if *c < 1 => {
                return Err(Error::Domain("constant sequence value must be >= 1".into()))
            }
            SequenceKind::Explicit(list) => {
                if list.is_empty() {
                    return Err(Error::Domain("explicit sequence must be nonempty".into()));
                }
                if list.iter().any(Zero::is_zero) {
                    return Err(Error::Domain("explicit sequence entries must be >= 1".into()));
                }
            }
            _ => {}
        }
        Ok(Sequence { kind, with_root })
    }

    pub fn naturals() -> Self {
        Sequence { kind: SequenceKind::Naturals, with_root: false }
    }

    pub fn fibonacci() -> Self {
        Sequence { kind: SequenceKind::Fibonacci, with_root: false }
    }

    /// Fibonacci with an extra size-1 root level: `1, 1, 1, 2, 3, 5, ...`.
    pub fn fibonacci_rooted() -> Self {
        Sequence { kind: SequenceKind::Fibonacci, with_root: true }
    }

    pub fn gaussian(q: u64) -> Result<Self> {
        Self::new(SequenceKind::Gaussian { q }, false)
    }

    pub fn constant(c: u64) -> Result<Self> {
        Self::new(SequenceKind::Constant { c }, false)
    }

    pub fn explicit<I, T>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigUint>,
    {
        Self::new(SequenceKind::Explicit(terms.into_iter().map(Into::into).collect()), false)
    }

    pub fn kind(&self) -> &SequenceKind {
        &self.kind
    }

    pub fn with_root(&self) -> bool {
        self.with_root
    }

    /// Number of defined terms, `None` for the infinite built-ins.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> Option<usize> {
        match &self.kind {
            SequenceKind::Explicit(list) => Some(list.len() + usize::from(self.with_root)),
            _ => None,
        }
    }

    /// `k_F`, the size of level `k` (k >= 1).
    pub fn term(&self, k: usize) -> Result<BigUint> {
        if k == 0 {
            return Err(Error::OutOfRange("level index must be >= 1".into()));
        }
        let k = if self.with_root {
            if k == 1 {
                return Ok(BigUint::one());
            }
            k - 1
        } else {
            k
        };
        Ok(match &self.kind {
            SequenceKind::Naturals => BigUint::from(k),
            SequenceKind::Fibonacci => {
                let (mut a, mut b) = (BigUint::one(), BigUint::one());
                for _ in 1..k {
                    let next = &a + &b;
                    a = std::mem::replace(&mut b, next);
                }
                a
            }
            SequenceKind::Gaussian { q } => {
                let q = BigUint::from(*q);
                let mut acc = BigUint::zero();
                let mut power = BigUint::one();
                for _ in 0..k {
                    acc += &power;
                    power *= &q;
                }
                acc
            }
            SequenceKind::Constant { c } => BigUint::from(*c),
            SequenceKind::Explicit(list) => list.get(k - 1).cloned().ok_or_else(|| {
                Error::OutOfRange(format!(
                    "explicit sequence has {} terms, level {} requested",
                    list.len() + usize::from(self.with_root),
                    k + usize::from(self.with_root)
                ))
            })?,
        })
    }

    /// Terms `1_F ..= n_F` as machine sizes, for building posets.
    pub fn level_sizes(&self, n: usize) -> Result<Vec<usize>> {
        (1..=n)
            .map(|k| {
                self.term(k)?.to_usize().ok_or_else(|| {
                    Error::OutOfRange(format!("level {k} is too large to materialize"))
                })
            })
            .collect()
    }

    /// `S(k) = 1_F + ... + k_F`, with `S(0) = 0`.
    pub fn cumulative(&self, k: usize) -> Result<BigUint> {
        let mut acc = BigUint::zero();
        for j in 1..=k {
            acc += self.term(j)?;
        }
        Ok(acc)
    }

    /// `n_F! = 1_F * 2_F * ... * n_F`, with `0_F! = 1`.
    pub fn ffactorial(&self, n: usize) -> Result<BigUint> {
        let mut acc = BigUint::one();
        for j in 1..=n {
            acc *= self.term(j)?;
        }
        Ok(acc)
    }

    /// Falling product `n_F (n-1)_F ... (n-k+1)_F`.
    pub fn falling(&self, n: usize, k: usize) -> Result<BigUint> {
        if k > n {
            return Err(Error::Domain(format!("falling product needs k <= n, got n={n}, k={k}")));
        }
        let mut acc = BigUint::one();
        for j in (n - k + 1)..=n {
            acc *= self.term(j)?;
        }
        Ok(acc)
    }

    /// Rising product `n_F (n+1)_F ... (n+k-1)_F`.
    pub fn rising(&self, n: usize, k: usize) -> Result<BigUint> {
        let mut acc = BigUint::one();
        for j in n..n + k {
            acc *= self.term(j)?;
        }
        Ok(acc)
    }

    /// The F-nomial coefficient `n_F^(k falling) / k_F!` as a reduced fraction.
    pub fn fnomial(&self, n: usize, k: usize) -> Result<FNomialValue> {
        if k > n {
            return Err(Error::Domain(format!("F-nomial needs 0 <= k <= n, got n={n}, k={k}")));
        }
        Ok(FNomialValue::new(self.falling(n, k)?, self.ffactorial(k)?))
    }

    /// Scans `fnomial(n, k)` for all `0 <= k <= n <= n_max` in lexicographic order.
    pub fn is_admissible(&self, n_max: usize) -> Result<AdmissibilityReport> {
        for n in 0..=n_max {
            for k in 0..=n {
                if !self.fnomial(n, k)?.is_integral() {
                    return Ok(AdmissibilityReport { admissible: false, first_violation: Some((n, k)) });
                }
            }
        }
        Ok(AdmissibilityReport { admissible: true, first_violation: None })
    }

    /// Canonical spec string, parseable by [`FromStr`].
    pub fn spec(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            SequenceKind::Naturals => write!(f, "nat")?,
            SequenceKind::Fibonacci => write!(f, "fib")?,
            SequenceKind::Gaussian { q } => write!(f, "gauss:{q}")?,
            SequenceKind::Constant { c } => write!(f, "const:{c}")?,
            SequenceKind::Explicit(list) => {
                write!(f, "list:")?;
                for (i, t) in list.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{t}")?;
                }
            }
        }
        if self.with_root {
            write!(f, "+root")?;
        }
        Ok(())
    }
}

impl FromStr for Sequence {
    type Err = Error;

    /// Accepts `nat`, `fib`, `gauss:Q`, `const:C`, `list:a,b,...`, each
    /// optionally followed by `+root`. Case-sensitive.
    fn from_str(spec: &str) -> Result<Self> {
        let bad = |token: &str| Error::Parse { token: token.to_string() };
        let (base, with_root) = match spec.strip_suffix("+root") {
            Some(base) => (base, true),
            None => (spec, false),
        };
        let parse_u64 = |token: &str| -> Result<u64> {
            if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad(token));
            }
            token.parse().map_err(|_| bad(token))
        };
        let kind = match base.split_once(':') {
            None => match base {
                "nat" => SequenceKind::Naturals,
                "fib" => SequenceKind::Fibonacci,
                other => return Err(bad(other)),
            },
            Some(("gauss", q)) => {
                let q = parse_u64(q)?;
                if q < 2 {
                    return Err(bad(&q.to_string()));
                }
                SequenceKind::Gaussian { q }
            }
            Some(("const", c)) => {
                let c = parse_u64(c)?;
                if c < 1 {
                    return Err(bad(&c.to_string()));
                }
                SequenceKind::Constant { c }
            }
            Some(("list", items)) => {
                let mut terms = Vec::new();
                for item in items.split(',') {
                    if item.is_empty() || !item.bytes().all(|b| b.is_ascii_digit()) {
                        return Err(bad(item));
                    }
                    let t: BigUint = item.parse().map_err(|_| bad(item))?;
                    if t.is_zero() {
                        return Err(bad(item));
                    }
                    terms.push(t);
                }
                SequenceKind::Explicit(terms)
            }
            Some((head, _)) => return Err(bad(head)),
        };
        Sequence::new(kind, with_root)
    }
}

/// An F-nomial coefficient stored as a fully reduced fraction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FNomialValue {
    numerator: BigUint,
    denominator: BigUint,
}

impl FNomialValue {
    fn new(numerator: BigUint, denominator: BigUint) -> Self {
        let g = numerator.gcd(&denominator);
        FNomialValue { numerator: numerator / &g, denominator: denominator / g }
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    pub fn denominator(&self) -> &BigUint {
        &self.denominator
    }

    pub fn is_integral(&self) -> bool {
        self.denominator.is_one()
    }

    /// The value when integral.
    pub fn to_integer(&self) -> Option<&BigUint> {
        self.is_integral().then_some(&self.numerator)
    }
}

impl fmt::Display for FNomialValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    /// Smallest `(n, k)` with a non-integral F-nomial.
    pub first_violation: Option<(usize, usize)>,
}
