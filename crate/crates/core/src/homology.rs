//! Reduced simplicial homology with GF(2) coefficients.

use std::collections::BTreeSet;

use crate::complex::{SimplicialComplex, VertexSet};
use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector};

/// Non-empty faces grouped by dimension; each level sorted by numeric value.
///
/// This is the working representation for homology. It can be restricted to a
/// vertex window without relabelling, which is what the induced-subcomplex
/// sweeps use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceTable {
    levels: Vec<Vec<VertexSet>>,
}

impl FaceTable {
    pub fn from_facets(facets: &[VertexSet]) -> Self {
        let mut all: Vec<VertexSet> = facets.iter().flat_map(|f| f.subsets()).filter(|s| !s.is_empty()).collect();
        all.sort_unstable_by_key(|s| (s.len(), s.bits()));
        all.dedup();
        let top = all.last().map_or(0, |s| s.len());
        let mut levels = vec![Vec::new(); top];
        for s in all {
            levels[s.len() - 1].push(s);
        }
        FaceTable { levels }
    }

    pub fn of(x: &SimplicialComplex) -> Self {
        FaceTable::from_facets(x.facets())
    }

    /// Faces contained in `window`: the face table of the induced subcomplex.
    pub fn restrict(&self, window: VertexSet) -> FaceTable {
        let mut levels: Vec<Vec<VertexSet>> =
            self.levels.iter().map(|l| l.iter().copied().filter(|s| s.is_subset(window)).collect()).collect();
        while levels.last().is_some_and(Vec::is_empty) {
            levels.pop();
        }
        FaceTable { levels }
    }

    /// Dimension of the complex; `-1` when only the empty face remains.
    pub fn dim(&self) -> i32 {
        self.levels.len() as i32 - 1
    }

    pub fn faces(&self, k: i32) -> &[VertexSet] {
        usize::try_from(k).ok().and_then(|k| self.levels.get(k)).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, k: i32) -> usize {
        if k == -1 {
            1
        } else {
            self.faces(k).len()
        }
    }

    pub fn contains(&self, face: VertexSet) -> bool {
        face.is_empty() || self.faces(face.len() as i32 - 1).binary_search(&face).is_ok()
    }

    /// Matrix of `∂_n : C_n -> C_{n-1}` in the sorted face bases.
    /// `∂_0` is the all-ones row into `C_{-1} = GF(2)`.
    pub fn boundary(&self, n: usize) -> Gf2Matrix {
        let cols = self.faces(n as i32);
        if n == 0 {
            let mut m = Gf2Matrix::zeros(1, cols.len());
            for c in 0..cols.len() {
                m.set(0, c, true);
            }
            return m;
        }
        let rows = self.faces(n as i32 - 1);
        let mut m = Gf2Matrix::zeros(rows.len(), cols.len());
        for (c, face) in cols.iter().enumerate() {
            for v in face.iter() {
                let r = rows.binary_search(&face.without(v)).expect("faces closed under subsets");
                m.set(r, c, true);
            }
        }
        m
    }

    pub fn boundary_rank(&self, n: usize) -> usize {
        if self.faces(n as i32).is_empty() {
            return 0;
        }
        if n == 0 {
            return 1;
        }
        self.boundary(n).rank()
    }

    /// `β̃_n = (f_n - rank ∂_n) - rank ∂_{n+1}`.
    pub fn betti(&self, n: usize) -> usize {
        let f = self.faces(n as i32).len();
        if f == 0 {
            return 0;
        }
        f - self.boundary_rank(n) - self.boundary_rank(n + 1)
    }

    pub fn all_betti(&self) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=self.levels.len()).map(|n| self.boundary_rank(n)).collect();
        (0..self.levels.len()).map(|n| self.levels[n].len() - ranks[n] - ranks[n + 1]).collect()
    }

    fn chain_vector(&self, chain: &Chain) -> Result<Gf2Vector> {
        let basis = self.faces(chain.dim);
        let mut v = Gf2Vector::zeros(basis.len());
        for f in &chain.faces {
            let i = basis.binary_search(f).map_err(|_| Error::NotAFace(f.to_string()))?;
            v.set(i, true);
        }
        Ok(v)
    }

    fn check_chain(&self, chain: &Chain) -> Result<()> {
        if chain.dim == -1 {
            return Ok(());
        }
        self.chain_vector(chain).map(|_| ())
    }

    /// `∂_n c` as a chain of dimension `n - 1`.
    pub fn chain_boundary(&self, chain: &Chain) -> Result<Chain> {
        if chain.dim == -1 {
            self.check_chain(chain)?;
            return Ok(Chain { dim: -2, faces: BTreeSet::new() });
        }
        let x = self.chain_vector(chain)?;
        let image = self.boundary(chain.dim as usize).mul_vec(&x)?;
        let faces = if chain.dim == 0 {
            if image.get(0) {
                BTreeSet::from([VertexSet::EMPTY])
            } else {
                BTreeSet::new()
            }
        } else {
            let rows = self.faces(chain.dim - 1);
            (0..image.len()).filter(|&i| image.get(i)).map(|i| rows[i]).collect()
        };
        Ok(Chain { dim: chain.dim - 1, faces })
    }

    pub fn is_cycle(&self, chain: &Chain) -> Result<bool> {
        Ok(self.chain_boundary(chain)?.faces.is_empty())
    }

    /// Whether `chain` lies in the image of `∂_{n+1}`.
    pub fn is_boundary(&self, chain: &Chain) -> Result<bool> {
        if chain.dim == -1 {
            self.check_chain(chain)?;
            return Ok(chain.faces.is_empty() || !self.faces(0).is_empty());
        }
        let v = self.chain_vector(chain)?;
        self.boundary(chain.dim as usize + 1).in_column_space(&v)
    }
}

/// A GF(2) chain: the set of faces with coefficient one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    dim: i32,
    faces: BTreeSet<VertexSet>,
}

impl Chain {
    pub fn new(dim: i32, faces: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        if dim < -1 {
            return Err(Error::MixedChain(dim));
        }
        let mut set = BTreeSet::new();
        for f in faces {
            if f.len() as i32 != dim + 1 {
                return Err(Error::MixedChain(dim));
            }
            // coefficients live in GF(2): a repeated face cancels
            if !set.insert(f) {
                set.remove(&f);
            }
        }
        Ok(Chain { dim, faces: set })
    }

    pub fn dim(&self) -> i32 {
        self.dim
    }

    pub fn faces(&self) -> &BTreeSet<VertexSet> {
        &self.faces
    }

    pub fn is_zero(&self) -> bool {
        self.faces.is_empty()
    }
}

/// Reduced Betti numbers `β̃_0 .. β̃_{dim X}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiVector {
    pub values: Vec<usize>,
}

pub fn boundary_matrix(x: &SimplicialComplex, n: usize) -> Result<Gf2Matrix> {
    x.require_non_void()?;
    Ok(FaceTable::of(x).boundary(n))
}

pub fn betti(x: &SimplicialComplex, n: usize) -> Result<usize> {
    x.require_non_void()?;
    Ok(FaceTable::of(x).betti(n))
}

pub fn all_betti(x: &SimplicialComplex) -> Result<BettiVector> {
    x.require_non_void()?;
    Ok(BettiVector { values: FaceTable::of(x).all_betti() })
}

pub fn is_cycle(x: &SimplicialComplex, chain: &Chain) -> Result<bool> {
    x.require_non_void()?;
    FaceTable::of(x).is_cycle(chain)
}

pub fn is_boundary(x: &SimplicialComplex, chain: &Chain) -> Result<bool> {
    x.require_non_void()?;
    FaceTable::of(x).is_boundary(chain)
}
