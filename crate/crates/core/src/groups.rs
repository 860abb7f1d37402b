//! Finite signed-permutation matrix groups in six dimensions.
//!
//! Elements of the 6D hyperoctahedral group B6 are 6x6 matrices with entries
//! in {-1, 0, 1} and exactly one nonzero entry per row and column. All group
//! data here is exact integer arithmetic; hashing the 36 entries gives set
//! semantics for free.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use nalgebra::Matrix6;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Order of the hyperoctahedral group B6 (2^6 * 6!).
pub const B6_ORDER: usize = 46_080;

/// A 6x6 signed permutation matrix.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermMatrix(pub [[i8; 6]; 6]);

impl SignedPermMatrix {
    /// Validating constructor: entries in {-1,0,1}, one nonzero per row and
    /// per column.
    pub fn new(m: [[i8; 6]; 6]) -> Result<Self> {
        let mut col_hits = [0u8; 6];
        for row in &m {
            let mut row_hits = 0;
            for (j, &e) in row.iter().enumerate() {
                match e {
                    0 => {}
                    1 | -1 => {
                        row_hits += 1;
                        col_hits[j] += 1;
                    }
                    _ => return Err(Error::NotSignedPermutation),
                }
            }
            if row_hits != 1 {
                return Err(Error::NotSignedPermutation);
            }
        }
        if col_hits != [1; 6] {
            return Err(Error::NotSignedPermutation);
        }
        Ok(Self(m))
    }

    pub fn is_valid(&self) -> bool {
        Self::new(self.0).is_ok()
    }

    pub fn identity() -> Self {
        let mut m = [[0i8; 6]; 6];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        Self(m)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = [[0i8; 6]; 6];
        for i in 0..6 {
            for k in 0..6 {
                let a = self.0[i][k];
                if a != 0 {
                    for j in 0..6 {
                        out[i][j] += a * rhs.0[k][j];
                    }
                }
            }
        }
        Self(out)
    }

    /// Inverse; equals the transpose for signed permutations.
    pub fn inverse(&self) -> Self {
        let mut out = [[0i8; 6]; 6];
        for i in 0..6 {
            for j in 0..6 {
                out[j][i] = self.0[i][j];
            }
        }
        Self(out)
    }

    pub fn trace(&self) -> i32 {
        (0..6).map(|i| i32::from(self.0[i][i])).sum()
    }

    /// Multiplicative order (all B6 elements have order <= 12 in the groups
    /// used here; capped defensively at 60).
    pub fn order(&self) -> u32 {
        let id = Self::identity();
        let mut p = *self;
        for k in 1..=60 {
            if p == id {
                return k;
            }
            p = p.mul(self);
        }
        0
    }

    pub fn apply(&self, v: &[i64; 6]) -> [i64; 6] {
        let mut out = [0i64; 6];
        for i in 0..6 {
            for j in 0..6 {
                out[i] += i64::from(self.0[i][j]) * v[j];
            }
        }
        out
    }

    pub fn to_matrix6(&self) -> Matrix6<f64> {
        Matrix6::from_fn(|i, j| f64::from(self.0[i][j]))
    }

    /// Row-major list of the 36 entries, the JSON wire form for groups.
    pub fn flat(&self) -> [i8; 36] {
        let mut out = [0i8; 36];
        for i in 0..6 {
            for j in 0..6 {
                out[i * 6 + j] = self.0[i][j];
            }
        }
        out
    }
}

impl fmt::Debug for SignedPermMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.0 {
            writeln!(f, "{row:3?}")?;
        }
        Ok(())
    }
}

/// Labels for the groups the library works with.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum GroupTag {
    /// Crystallographic representation of the icosahedral group.
    I,
    /// Partner icosahedral representation sharing the tetrahedral subgroup.
    IT,
    /// Partner sharing the order-10 dihedral subgroup.
    ID10,
    /// Partner sharing the order-6 dihedral subgroup.
    ID6,
    /// Tetrahedral subgroup representation.
    T,
    /// Dihedral subgroup of order 10.
    D10,
    /// Dihedral subgroup of order 6.
    D6,
    Other,
}

impl GroupTag {
    /// The `(p, q, r)` of the defining relations `g1^p = g2^q = (g1 g2)^r = e`.
    pub fn relation_triple(self) -> Option<(u32, u32, u32)> {
        match self {
            GroupTag::I | GroupTag::IT | GroupTag::ID10 | GroupTag::ID6 => Some((2, 3, 5)),
            GroupTag::T => Some((2, 3, 3)),
            GroupTag::D10 => Some((2, 5, 2)),
            GroupTag::D6 => Some((2, 3, 2)),
            GroupTag::Other => None,
        }
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// The three maximal subgroups of the icosahedral group.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Serialize, Deserialize)]
pub enum Subgroup {
    T,
    D10,
    D6,
}

impl Subgroup {
    pub const ALL: [Subgroup; 3] = [Subgroup::T, Subgroup::D10, Subgroup::D6];

    /// Number of rotation angles parameterizing the centralizer family.
    pub fn angle_arity(self) -> usize {
        match self {
            Subgroup::T | Subgroup::D10 => 1,
            Subgroup::D6 => 2,
        }
    }

    pub fn group_tag(self) -> GroupTag {
        match self {
            Subgroup::T => GroupTag::T,
            Subgroup::D10 => GroupTag::D10,
            Subgroup::D6 => GroupTag::D6,
        }
    }

    pub fn partner_tag(self) -> GroupTag {
        match self {
            Subgroup::T => GroupTag::IT,
            Subgroup::D10 => GroupTag::ID10,
            Subgroup::D6 => GroupTag::ID6,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Subgroup::T => "T",
            Subgroup::D10 => "D10",
            Subgroup::D6 => "D6",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_uppercase().as_str() {
            "T" => Some(Subgroup::T),
            "D10" => Some(Subgroup::D10),
            "D6" => Some(Subgroup::D6),
            _ => None,
        }
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A finite matrix group, closed under multiplication, with its generators.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    pub label: GroupTag,
    pub generators: Vec<SignedPermMatrix>,
    elements: Vec<SignedPermMatrix>,
}

impl MatrixGroup {
    /// Breadth-first product closure of the generators. `cap` bounds the
    /// number of elements; the hyperoctahedral order is the natural default.
    pub fn closure(
        label: GroupTag,
        generators: Vec<SignedPermMatrix>,
        cap: usize,
    ) -> Result<Self> {
        let mut seen: HashSet<SignedPermMatrix> = HashSet::new();
        let mut queue = VecDeque::new();
        let id = SignedPermMatrix::identity();
        seen.insert(id);
        queue.push_back(id);
        while let Some(a) = queue.pop_front() {
            for g in &generators {
                let c = a.mul(g);
                if seen.insert(c) {
                    if seen.len() > cap {
                        return Err(Error::ClosureCapExceeded { cap });
                    }
                    queue.push_back(c);
                }
            }
        }
        let mut elements: Vec<_> = seen.into_iter().collect();
        elements.sort();
        Ok(Self {
            label,
            generators,
            elements,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in a canonical (sorted) order.
    pub fn elements(&self) -> &[SignedPermMatrix] {
        &self.elements
    }

    pub fn contains(&self, m: &SignedPermMatrix) -> bool {
        self.elements.binary_search(m).is_ok()
    }

    /// Checks the label-specific relations `g1^p = g2^q = (g1 g2)^r = e` on
    /// the ordered generator pair, as exact matrix powers.
    pub fn verify_presentation(&self) -> Result<bool> {
        let (p, q, r) = self.label.relation_triple().ok_or_else(|| {
            Error::UnsupportedPresentation {
                label: self.label.to_string(),
            }
        })?;
        if self.generators.len() != 2 {
            return Ok(false);
        }
        let id = SignedPermMatrix::identity();
        let (g1, g2) = (self.generators[0], self.generators[1]);
        let pow = |m: SignedPermMatrix, k: u32| (0..k).fold(id, |acc, _| acc.mul(&m));
        Ok(g1 != id
            && g2 != id
            && pow(g1, p) == id
            && pow(g2, q) == id
            && pow(g1.mul(&g2), r) == id)
    }

    /// Set intersection of two closed groups; automatically closed again.
    pub fn intersect(&self, other: &Self) -> Self {
        let elements: Vec<_> = self
            .elements
            .iter()
            .filter(|m| other.contains(m))
            .copied()
            .collect();
        Self {
            label: GroupTag::Other,
            generators: Vec::new(),
            elements,
        }
    }

    pub fn same_elements(&self, other: &Self) -> bool {
        self.elements == other.elements
    }

    /// Histogram of `(element order, trace)` classes.
    pub fn character_vector(&self) -> BTreeMap<(u32, i32), usize> {
        let mut out = BTreeMap::new();
        for e in &self.elements {
            *out.entry((e.order(), e.trace())).or_insert(0) += 1;
        }
        out
    }

    /// Orbit of an integer vector under the group, deduplicated and sorted.
    pub fn orbit(&self, seed: &[i64; 6]) -> Vec<[i64; 6]> {
        let mut orbit: Vec<[i64; 6]> = self.elements.iter().map(|m| m.apply(seed)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        orbit
    }

    /// JSON wire form: one 36-entry row per element.
    pub fn to_flat_rows(&self) -> Vec<Vec<i8>> {
        self.elements.iter().map(|m| m.flat().to_vec()).collect()
    }
}
