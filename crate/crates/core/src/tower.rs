//! Nested hyperspaces as bitmasks.
//!
//! Over `n` atoms, a point of `2^X` is a nonzero `u64` mask `A` with bit `a`
//! set for each atom. A point of `2^{2^X}` is a nonzero `u64` mask with bit
//! `A - 1` set for each member `A`; this needs `2^n - 1 <= 64`, so `n <= 6`.
//! A point of `2^{2^{2^X}}` is a bitset over level-two indices `𝒜 - 1`,
//! tabulated for `n <= 4`.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Largest atom count for levels one and two.
pub const MAX_ATOMS: usize = 6;
/// Largest atom count for level three.
pub const MAX_ATOMS_LEVEL3: usize = 4;

pub type L1 = u64;
pub type L2 = u64;

fn check_atoms(n: usize, cap: usize) -> Result<()> {
    if n == 0 || n > cap {
        return Err(Error::SizeLimit(format!("{n} atoms outside 1..={cap} for the mask tower")));
    }
    Ok(())
}

/// Number of points of `2^X` over `n` atoms.
pub fn level1_count(n: usize) -> usize {
    (1usize << n) - 1
}

/// Number of points of `2^{2^X}` over `n <= 5` atoms.
pub fn level2_count(n: usize) -> usize {
    (1usize << level1_count(n)) - 1
}

/// `{x}`.
pub fn eta0(x: usize) -> L1 {
    1 << x
}

/// `{A}`.
pub fn eta1(a: L1) -> L2 {
    1 << (a - 1)
}

/// `∪𝒜`.
pub fn mu1(a: L2) -> L1 {
    let mut out = 0;
    let mut bits = a;
    while bits != 0 {
        let i = bits.trailing_zeros() as u64;
        out |= i + 1;
        bits &= bits - 1;
    }
    out
}

/// `{{a} : a ∈ A}`.
pub fn singletons(a: L1) -> L2 {
    let mut out = 0;
    let mut bits = a;
    while bits != 0 {
        let x = bits.trailing_zeros() as usize;
        out |= eta1(eta0(x));
        bits &= bits - 1;
    }
    out
}

/// Image of `A` under an atom map.
pub fn image1(f: &[usize], a: L1) -> L1 {
    let mut out = 0;
    let mut bits = a;
    while bits != 0 {
        let x = bits.trailing_zeros() as usize;
        out |= 1 << f[x];
        bits &= bits - 1;
    }
    out
}

/// Image of a level-two point under a level-one map given as a table on
/// masks (`table[A]` is the image of `A`).
pub fn image2(table: &[L1], a: L2) -> L2 {
    let mut out = 0;
    let mut bits = a;
    while bits != 0 {
        let i = bits.trailing_zeros() as usize;
        out |= eta1(table[i + 1]);
        bits &= bits - 1;
    }
    out
}

/// Level-one image table of an atom map: entry `A` is `f(A)`, entry 0 is 0.
pub fn table1(f: &[usize]) -> Vec<L1> {
    let n = f.len();
    (0..1u64 << n).map(|a| image1(f, a)).collect()
}

/// Precomputed level-three operations over `n <= 4` atoms.
#[derive(Clone, Debug)]
pub struct Level3 {
    n: usize,
    /// `∪𝒜` for each level-two index.
    union: Vec<L1>,
}

impl Level3 {
    pub fn new(n: usize) -> Result<Self> {
        check_atoms(n, MAX_ATOMS_LEVEL3)?;
        let count = level2_count(n);
        let union = (1..=count as u64).map(mu1).collect();
        Ok(Level3 { n, union })
    }

    pub fn atoms(&self) -> usize {
        self.n
    }

    /// Number of level-two points, i.e. the bit length of a level-three point.
    pub fn width(&self) -> usize {
        self.union.len()
    }

    /// `∪𝔄` as a level-two point (`μ_{2^X}`).
    pub fn mu2(&self, a: &FixedBitSet) -> L2 {
        a.ones().fold(0, |acc, j| acc | (j as u64 + 1))
    }

    /// `{∪𝒜 : 𝒜 ∈ 𝔄}` as a level-two point (`2^{μ_X}`).
    pub fn image_mu(&self, a: &FixedBitSet) -> L2 {
        a.ones().fold(0, |acc, j| acc | eta1(self.union[j]))
    }

    /// `∪𝒜` for level-two index `j`.
    pub fn union_of(&self, j: usize) -> L1 {
        self.union[j]
    }

    /// Level-two image table for a level-one table, indexed like `union`.
    pub fn table2(&self, t1: &[L1]) -> Vec<L2> {
        (1..=self.width() as u64).map(|a| image2(t1, a)).collect()
    }

    /// Image of a level-three point under a level-two table.
    pub fn image3(&self, t2: &[L2], a: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.width());
        for j in a.ones() {
            out.insert((t2[j] - 1) as usize);
        }
        out
    }

    /// Level-two indices whose members all lie inside `carrier`.
    pub fn inside(&self, carrier: L1) -> Vec<usize> {
        (0..self.width()).filter(|&j| self.union[j] & !carrier == 0).collect()
    }
}

/// A partial action on `n <= 6` atoms in mask form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaskAction {
    pub n: usize,
    pub carriers: Vec<L1>,
    /// Atom maps; entries outside `X_{g⁻¹}` are unused.
    pub maps: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
}

impl MaskAction {
    pub fn from_partial(pa: &crate::actions::PartialAction) -> Result<Self> {
        let n = pa.space().len();
        check_atoms(n, MAX_ATOMS)?;
        let g = pa.group();
        let carriers = (0..g.order())
            .map(|k| pa.carrier(k).ones().fold(0, |acc, x| acc | eta0(x)))
            .collect();
        let maps = (0..g.order())
            .map(|k| (0..n).map(|x| pa.apply(k, x).unwrap_or(x)).collect())
            .collect();
        let inv = (0..g.order()).map(|k| g.inv(k)).collect();
        Ok(MaskAction { n, carriers, maps, inv })
    }

    pub fn order(&self) -> usize {
        self.carriers.len()
    }

    /// `2^{θ_g}` on masks, meaningful inside `⟨X_{g⁻¹}⟩`.
    pub fn table1(&self, g: usize) -> Vec<L1> {
        table1(&self.maps[g])
    }
}
