//! Graded posets built as chains of bipartite layers.
//!
//! Level `t` and level `t + 1` are connected by a 0/1 biadjacency block of
//! shape `sizes[t] x sizes[t + 1]`; a cobweb poset has every block all-ones.
//! Nodes are addressed either by `(level, pos)` grid coordinates or by the
//! 1-based linear label `cumulative(level - 1) + pos`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::fsequence::Sequence;
use crate::matrix::{IncidenceMatrix, IntMatrix};

/// Grid coordinates of a node; both components are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeRef {
    pub level: usize,
    pub pos: usize,
}

impl NodeRef {
    pub fn new(level: usize, pos: usize) -> Self {
        NodeRef { level, pos }
    }
}

impl fmt::Display for NodeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{}>", self.level, self.pos)
    }
}

/// A 0/1 biadjacency matrix between two consecutive levels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Block {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl Block {
    pub fn new(rows: usize, cols: usize, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != rows * cols {
            return Err(Error::Domain(format!("block data has {} bits, expected {rows}x{cols}", bits.len())));
        }
        Ok(Block { rows, cols, bits })
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        Block { rows, cols, bits: vec![true; rows * cols] }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Block { rows, cols, bits: vec![false; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut b = Self::zeros(n, n);
        for i in 0..n {
            b.set(i, i, true);
        }
        b
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut bits = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::Domain("ragged block rows".into()));
            }
            for &b in row {
                match b {
                    0 => bits.push(false),
                    1 => bits.push(true),
                    other => return Err(Error::Domain(format!("block entries must be 0 or 1, found {other}"))),
                }
            }
        }
        Ok(Block { rows: rows.len(), cols, bits })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// 0-based entry.
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.bits[i * self.cols + j] = value;
    }

    pub fn is_ones(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        (0..self.cols).all(|j| !self.get(i, j))
    }

    pub fn col_is_zero(&self, j: usize) -> bool {
        (0..self.rows).all(|i| !self.get(i, j))
    }

    pub fn to_int(&self) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| BigInt::from(u8::from(self.get(i, j))))
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| u8::from(self.get(i, j))).collect()).collect()
    }
}

/// Probability of setting a block bit, as an exact fraction in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Density {
    num: u64,
    den: u64,
}

impl Density {
    pub const ONE: Density = Density { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num == 0 || num > den {
            return Err(Error::Domain(format!("density must lie in (0, 1], got {num}/{den}")));
        }
        Ok(Density { num, den })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Density {
    type Err = Error;

    /// Accepts `p/q`, a decimal such as `0.4`, or an integer.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("invalid density {s:?}"));
        let digits = |t: &str| -> Result<u64> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse().map_err(|_| bad())
        };
        if let Some((n, d)) = s.split_once('/') {
            return Density::new(digits(n)?, digits(d)?);
        }
        if let Some((whole, frac)) = s.split_once('.') {
            if frac.len() > 18 {
                return Err(bad());
            }
            let den = 10u64.pow(frac.len() as u32);
            let whole = if whole.is_empty() { 0 } else { digits(whole)? };
            let frac = if frac.is_empty() { 0 } else { digits(frac)? };
            let num = whole.checked_mul(den).and_then(|w| w.checked_add(frac)).ok_or_else(bad)?;
            let g = gcd(num, den);
            return Density::new(num / g.max(1), den / g.max(1));
        }
        Density::new(digits(s)?, 1)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A finite graded poset: level sizes plus one biadjacency block per pair of
/// consecutive levels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedPoset {
    sizes: Vec<usize>,
    blocks: Vec<Block>,
}

impl GradedPoset {
    pub fn new(sizes: Vec<usize>, blocks: Vec<Block>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::Domain("a graded poset needs at least one level".into()));
        }
        if let Some(l) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::Domain(format!("level {} has size 0", l + 1)));
        }
        if blocks.len() + 1 != sizes.len() {
            return Err(Error::Domain(format!(
                "{} levels need {} blocks, got {}",
                sizes.len(),
                sizes.len() - 1,
                blocks.len()
            )));
        }
        for (t, b) in blocks.iter().enumerate() {
            if b.rows() != sizes[t] || b.cols() != sizes[t + 1] {
                return Err(Error::Domain(format!(
                    "block {} is {}x{} but levels {} and {} have sizes {} and {}",
                    t + 1,
                    b.rows(),
                    b.cols(),
                    t + 1,
                    t + 2,
                    sizes[t],
                    sizes[t + 1]
                )));
            }
        }
        Ok(GradedPoset { sizes, blocks })
    }

    /// Cobweb with the given level sizes.
    pub fn cobweb_from_sizes(sizes: &[usize]) -> Result<Self> {
        let blocks = sizes.windows(2).map(|w| Block::ones(w[0], w[1])).collect();
        Self::new(sizes.to_vec(), blocks)
    }

    /// The cobweb poset whose level `k` has `k_F` nodes, for `k = 1..=n`.
    pub fn cobweb(seq: &Sequence, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("level count must be >= 1".into()));
        }
        Self::cobweb_from_sizes(&seq.level_sizes(n)?)
    }

    pub fn levels(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Size of a 1-based level.
    pub fn size(&self, level: usize) -> usize {
        self.sizes[level - 1]
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Block between levels `t` and `t + 1` (1-based).
    pub fn block(&self, t: usize) -> &Block {
        &self.blocks[t - 1]
    }

    pub fn node_count(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn is_cobweb(&self) -> bool {
        self.blocks.iter().all(Block::is_ones)
    }

    /// All nodes in label order.
    pub fn nodes(&self) -> impl Iterator<Item = NodeRef> + '_ {
        self.sizes
            .iter()
            .enumerate()
            .flat_map(|(l, &s)| (1..=s).map(move |pos| NodeRef::new(l + 1, pos)))
    }

    pub fn contains(&self, node: NodeRef) -> bool {
        node.level >= 1 && node.level <= self.levels() && node.pos >= 1 && node.pos <= self.size(node.level)
    }

    pub fn check_node(&self, node: NodeRef) -> Result<()> {
        if self.contains(node) {
            Ok(())
        } else {
            Err(Error::Domain(format!("node {node} does not exist in a poset with level sizes {:?}", self.sizes)))
        }
    }

    /// Glues `other` on top of `self`, identifying the last level of `self`
    /// with the first level of `other`.
    pub fn natural_join(&self, other: &GradedPoset) -> Result<GradedPoset> {
        let left = *self.sizes.last().expect("nonempty");
        let right = other.sizes[0];
        if left != right {
            return Err(Error::JoinCondition { left, right });
        }
        let mut sizes = self.sizes.clone();
        sizes.extend_from_slice(&other.sizes[1..]);
        let mut blocks = self.blocks.clone();
        blocks.extend_from_slice(&other.blocks);
        GradedPoset::new(sizes, blocks)
    }

    /// The two-level poset spanned by levels `t` and `t + 1`.
    pub fn layer(&self, t: usize) -> GradedPoset {
        GradedPoset { sizes: vec![self.size(t), self.size(t + 1)], blocks: vec![self.block(t).clone()] }
    }

    pub fn linear_label(&self, node: NodeRef) -> Result<usize> {
        self.check_node(node)?;
        Ok(self.sizes[..node.level - 1].iter().sum::<usize>() + node.pos)
    }

    /// 0-based matrix index of a node.
    pub fn index_of(&self, node: NodeRef) -> Result<usize> {
        Ok(self.linear_label(node)? - 1)
    }

    pub fn grid_of(&self, label: usize) -> Result<NodeRef> {
        if label == 0 {
            return Err(Error::Domain("labels start at 1".into()));
        }
        let mut before = 0;
        for (l, &s) in self.sizes.iter().enumerate() {
            if label <= before + s {
                return Ok(NodeRef::new(l + 1, label - before));
            }
            before += s;
        }
        Err(Error::Domain(format!("label {label} exceeds node count {before}")))
    }

    /// True when `y` covers `x`.
    pub fn covers(&self, x: NodeRef, y: NodeRef) -> bool {
        y.level == x.level + 1 && self.block(x.level).get(x.pos - 1, y.pos - 1)
    }

    /// Nodes covering `x`, in position order.
    pub fn up_neighbors(&self, x: NodeRef) -> impl Iterator<Item = NodeRef> + '_ {
        let next = x.level + 1;
        let block = (x.level < self.levels()).then(|| self.block(x.level));
        block
            .into_iter()
            .flat_map(move |b| (0..b.cols()).filter(move |&j| b.get(x.pos - 1, j)).map(move |j| NodeRef::new(next, j + 1)))
    }

    /// Cover relation matrix: 1 where the column node covers the row node.
    pub fn cover_matrix(&self) -> IncidenceMatrix {
        let n = self.node_count();
        let mut m = IntMatrix::zeros(n, n);
        let mut offset = 0;
        for (t, block) in self.blocks.iter().enumerate() {
            let next = offset + self.sizes[t];
            for i in 0..block.rows() {
                for j in 0..block.cols() {
                    if block.get(i, j) {
                        m.set(offset + i, next + j, BigInt::from(1));
                    }
                }
            }
            offset = next;
        }
        IncidenceMatrix::new(self.sizes.clone(), m).expect("dimensions match by construction")
    }

    /// Adjacency matrix of the Hasse digraph; the same matrix as the cover relation.
    pub fn adjacency(&self) -> IncidenceMatrix {
        self.cover_matrix()
    }

    /// `B_r B_{r+1} ... B_{s-1}` over the integers; entry `(i, j)` counts the
    /// saturated chains from `<r, i+1>` to `<s, j+1>`.
    pub fn block_product(&self, r: usize, s: usize) -> Result<IntMatrix> {
        if r == 0 || r >= s || s > self.levels() {
            return Err(Error::Domain(format!(
                "block product needs 1 <= r < s <= {}, got r={r}, s={s}",
                self.levels()
            )));
        }
        let mut acc = self.block(r).to_int();
        for t in r + 1..s {
            acc = acc.mul(&self.block(t).to_int())?;
        }
        Ok(acc)
    }

    /// Non-extremal nodes lacking outgoing arcs (below the top level) or
    /// incoming arcs (above the bottom level).
    pub fn mute_nodes(&self) -> Vec<NodeRef> {
        let n = self.levels();
        self.nodes()
            .filter(|x| {
                let no_out = x.level < n && self.block(x.level).row_is_zero(x.pos - 1);
                let no_in = x.level > 1 && self.block(x.level - 1).col_is_zero(x.pos - 1);
                no_out || no_in
            })
            .collect()
    }

    /// Random graded poset with level sizes from `seq`: each block bit is set
    /// independently with probability `density`. Without `allow_mute`, every
    /// all-zero row and then every all-zero column gets its first bit set.
    pub fn random(seq: &Sequence, n: usize, density: Density, seed: u64, allow_mute: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("level count must be >= 1".into()));
        }
        Self::random_with_sizes(&seq.level_sizes(n)?, density, seed, allow_mute)
    }

    pub fn random_with_sizes(sizes: &[usize], density: Density, seed: u64, allow_mute: bool) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut blocks = Vec::with_capacity(sizes.len().saturating_sub(1));
        for w in sizes.windows(2) {
            let mut b = Block::zeros(w[0], w[1]);
            for i in 0..w[0] {
                for j in 0..w[1] {
                    b.set(i, j, rng.gen_range(0..density.den) < density.num);
                }
            }
            if !allow_mute {
                for i in 0..w[0] {
                    if b.row_is_zero(i) {
                        b.set(i, 0, true);
                    }
                }
                for j in 0..w[1] {
                    if b.col_is_zero(j) {
                        b.set(0, j, true);
                    }
                }
            }
            blocks.push(b);
        }
        Self::new(sizes.to_vec(), blocks)
    }

    pub fn to_json(&self) -> Value {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.to_rows().into_iter().map(|r| r.into_iter().map(Value::from).collect::<Value>()).collect::<Value>())
            .collect();
        let mut map = Map::new();
        map.insert("blocks".into(), Value::Array(blocks));
        map.insert("sizes".into(), self.sizes.iter().map(|&s| Value::from(s)).collect());
        map.insert("version".into(), Value::from(1));
        Value::Object(map)
    }

    /// Canonical compact serialization with sorted keys.
    pub fn to_json_string(&self) -> String {
        self.to_json().to_string()
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let doc = |msg: &str| Error::Document(msg.to_string());
        match value.get("version").and_then(Value::as_u64) {
            Some(1) => {}
            Some(v) => return Err(Error::Document(format!("unsupported poset document version {v}"))),
            None => return Err(doc("missing \"version\"")),
        }
        let sizes = value
            .get("sizes")
            .and_then(Value::as_array)
            .ok_or_else(|| doc("missing \"sizes\" array"))?
            .iter()
            .map(|v| v.as_u64().map(|s| s as usize).ok_or_else(|| Error::Document(format!("invalid level size {v}"))))
            .collect::<Result<Vec<_>>>()?;
        let blocks = value
            .get("blocks")
            .and_then(Value::as_array)
            .ok_or_else(|| doc("missing \"blocks\" array"))?
            .iter()
            .map(|b| {
                let rows = b
                    .as_array()
                    .ok_or_else(|| doc("block must be an array of rows"))?
                    .iter()
                    .map(|row| {
                        row.as_array()
                            .ok_or_else(|| doc("block row must be an array"))?
                            .iter()
                            .map(|bit| match bit.as_u64() {
                                Some(v @ (0 | 1)) => Ok(v as u8),
                                _ => Err(Error::Document(format!("block entries must be 0 or 1, found {bit}"))),
                            })
                            .collect::<Result<Vec<u8>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Block::from_rows(&rows).map_err(|e| Error::Document(e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        GradedPoset::new(sizes, blocks).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(text)?)
    }
}
