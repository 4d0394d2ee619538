//! Equality-case machinery for `L(X) = M(X)`: induced simplex boundaries,
//! induced cycles, and certification that their fundamental cycles generate
//! homology of the window they sit in.

use serde::Serialize;

use crate::complex::{SimplicialComplex, VertexSet};
use crate::error::{Error, Result};
use crate::homology::{Chain, FaceTable};
use crate::leray::{self, window_range};
use crate::ordering::{self, Limits};
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    InducedCycle,
    BoundaryOfSimplex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorWitness {
    pub kind: WitnessKind,
    pub vertices: VertexSet,
    pub window: VertexSet,
    pub hom_dim: usize,
    /// The fundamental cycle is not a boundary in `X[window]`.
    pub is_generator: bool,
}

/// Vertex sets `S` with `|S| = k + 1` whose proper subsets are all faces
/// while `S` is not: exactly the size-`(k+1)` minimal non-faces, and exactly
/// the induced copies of `∂Δ(k+1)`.
pub fn induced_boundary_complexes(x: &SimplicialComplex, k: usize) -> Result<Vec<VertexSet>> {
    let all = x.minimal_nonfaces()?;
    Ok(all.into_iter().filter(|s| k >= 1 && s.len() == k + 1).collect())
}

fn adjacency(x: &SimplicialComplex) -> Vec<u64> {
    let n = x.num_vertices();
    let mut adj = vec![0u64; n];
    for f in x.facets() {
        for a in f.iter() {
            adj[a] |= (*f).without(a).bits();
        }
    }
    adj
}

/// Induced cycles of the 1-skeleton: chordless cycles of length 4 to
/// `max_len`, plus empty triangles. Each is reported once, as a vertex list
/// starting at its smallest vertex with the smaller neighbour second.
pub fn induced_cycles(x: &SimplicialComplex, max_len: usize) -> Result<Vec<Vec<usize>>> {
    x.require_non_void()?;
    if max_len < 3 {
        return Err(Error::Config(format!("induced cycles need max_len >= 3, got {max_len}")));
    }
    let adj = adjacency(x);
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(max_len);
    for root in 0..adj.len() {
        path.clear();
        path.push(root);
        extend_chordless(x, &adj, &mut path, VertexSet::EMPTY, max_len, &mut out);
    }
    Ok(out)
}

/// `interior` holds the path vertices other than the root and the tip.
fn extend_chordless(
    x: &SimplicialComplex,
    adj: &[u64],
    path: &mut Vec<usize>,
    interior: VertexSet,
    max_len: usize,
    out: &mut Vec<Vec<usize>>,
) {
    let root = path[0];
    let tip = *path.last().unwrap();
    let on_path: VertexSet = path.iter().copied().collect();
    let above_root = u64::MAX.checked_shl(root as u32 + 1).unwrap_or(0);
    // neighbours of the tip above the root, off the path, with no chord to
    // the interior
    let mut cands = adj[tip] & !on_path.bits() & above_root;
    for v in interior.iter() {
        cands &= !adj[v];
    }
    while cands != 0 {
        let w = cands.trailing_zeros() as usize;
        cands &= cands - 1;
        if path.len() >= 2 && adj[w] >> root & 1 == 1 {
            // path[1] < w skips the reflected copy
            if path[1] < w && (path.len() > 2 || !x.is_face(on_path.with(w))) {
                let mut cycle = path.clone();
                cycle.push(w);
                out.push(cycle);
            }
        } else if path.len() + 1 < max_len {
            let next_interior = if path.len() >= 2 { interior.with(tip) } else { interior };
            path.push(w);
            extend_chordless(x, adj, path, next_interior, max_len, out);
            path.pop();
        }
    }
}

/// The fundamental cycle of a witness, in homological dimension `k - 1`.
fn fundamental_cycle(x: &SimplicialComplex, witness: VertexSet, k: usize) -> Result<(WitnessKind, Chain)> {
    let describe = || format!("{:?}", x.labels_of(witness));
    if k < 2 {
        return Err(Error::Config(format!("witnesses live in homological dimension >= 1, got k = {k}")));
    }
    if k >= 3 || witness.len() == 3 {
        if witness.len() != k + 1 {
            return Err(Error::NotInduced(format!("{} has {} vertices, expected {}", describe(), witness.len(), k + 1)));
        }
        if x.is_face(witness) {
            return Err(Error::NotInduced(format!("{} is a face", describe())));
        }
        let ridges: Vec<VertexSet> = witness.iter().map(|v| witness.without(v)).collect();
        if let Some(r) = ridges.iter().find(|r| !x.is_face(**r)) {
            return Err(Error::NotInduced(format!("{:?} is not a face", x.labels_of(*r))));
        }
        let kind = if k == 2 { WitnessKind::InducedCycle } else { WitnessKind::BoundaryOfSimplex };
        return Ok((kind, Chain::new(k as i32 - 1, ridges)?));
    }
    // k == 2 with at least four vertices: the induced graph must be one cycle
    let adj = adjacency(x);
    let mut edges = Vec::new();
    for v in witness.iter() {
        let nbrs = VertexSet::from_bits(adj[v]) & witness;
        if nbrs.len() != 2 {
            return Err(Error::NotInduced(format!("{} is not an induced cycle", describe())));
        }
        edges.extend(nbrs.iter().filter(|&u| u > v).map(|u| VertexSet::singleton(v).with(u)));
    }
    let start = witness.min().unwrap();
    let mut reached = VertexSet::singleton(start);
    let mut frontier = vec![start];
    while let Some(v) = frontier.pop() {
        for u in (VertexSet::from_bits(adj[v]) & witness).iter() {
            if !reached.contains(u) {
                reached = reached.with(u);
                frontier.push(u);
            }
        }
    }
    if reached != witness {
        return Err(Error::NotInduced(format!("{} is not connected", describe())));
    }
    Ok((WitnessKind::InducedCycle, Chain::new(1, edges)?))
}

/// Checks that the fundamental `(k-1)`-cycle of `witness` is not a boundary in
/// `X[window]`.
pub fn certify_generator(
    x: &SimplicialComplex,
    window: VertexSet,
    witness: VertexSet,
    k: usize,
) -> Result<GeneratorWitness> {
    x.require_non_void()?;
    if !witness.is_subset(window) {
        return Err(Error::NotInduced(format!("witness {witness} is not inside window {window}")));
    }
    let (kind, cycle) = fundamental_cycle(x, witness, k)?;
    let table = FaceTable::of(x).restrict(window);
    let is_generator = !table.is_boundary(&cycle)?;
    Ok(GeneratorWitness { kind, vertices: witness, window, hom_dim: k - 1, is_generator })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityReport {
    pub leray: usize,
    pub m: usize,
    pub equality: bool,
    /// Minimum `M_≺` over weak shellings; `None` if there is none.
    pub weak_shelling_min: Option<usize>,
    /// Some weak shelling attains `M(X)`.
    pub weak_shelling_optimal: bool,
    /// Case `1`, `2` or `3` according to `k = L = M`; `None` without equality.
    pub case: Option<u8>,
    /// Certified witnesses, one per distinct vertex set.
    pub witnesses: Vec<GeneratorWitness>,
    /// Windows with `β̃_{k-1}(X[W]) != 0`.
    pub windows_with_homology: usize,
    /// Those windows in which some witness was certified.
    pub windows_certified: usize,
    /// `β̃_{k-1}(X[W]) <= 1` for every window.
    pub betti_cap_ok: bool,
    /// Whether the structural conclusion holds; `None` without equality.
    pub conclusion_holds: Option<bool>,
}

impl EqualityReport {
    pub fn hypothesis_holds(&self) -> bool {
        self.equality && self.weak_shelling_optimal
    }

    /// Hypothesis satisfied but conclusion failed: a counterexample.
    pub fn contradicts_theorem(&self) -> bool {
        self.hypothesis_holds() && self.conclusion_holds == Some(false)
    }
}

/// Computes `L`, `M` and the weak-shelling optimum and, when `L = M = k`,
/// checks the structural conclusion: for `k >= 2` every window with
/// `β̃_{k-1} != 0` holds a certified induced cycle (`k = 2`) or induced
/// `∂Δ(k+1)` (`k >= 3`), and those Betti numbers never exceed one.
pub fn verify_equality_theorem(x: &SimplicialComplex, limits: Limits) -> Result<EqualityReport> {
    if x.is_simplex()? {
        return Err(Error::Simplex("the equality theorem concerns non-simplices"));
    }
    let leray = leray::leray_number(x)?.leray;
    let m = ordering::m_number(x, limits)?.m;
    let weak_shelling_min = ordering::weak_shelling_min_m(x, limits)?.map(|(v, _)| v);
    let equality = leray == m;
    let mut report = EqualityReport {
        leray,
        m,
        equality,
        weak_shelling_min,
        weak_shelling_optimal: weak_shelling_min == Some(m),
        case: None,
        witnesses: Vec::new(),
        windows_with_homology: 0,
        windows_certified: 0,
        betti_cap_ok: true,
        conclusion_holds: None,
    };
    if !equality {
        return Ok(report);
    }
    let k = leray;
    report.case = Some(k.min(3) as u8);
    if k == 1 {
        report.conclusion_holds = Some(true);
        return Ok(report);
    }

    let table = FaceTable::of(x);
    let mut windows: Vec<(u64, usize)> = par::fold_range(
        window_range(x)?,
        Vec::new,
        |mut acc, w| {
            let b = table.restrict(VertexSet::from_bits(w)).betti(k - 1);
            if b != 0 {
                acc.push((w, b));
            }
            acc
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    );
    windows.sort_unstable();
    report.windows_with_homology = windows.len();
    report.betti_cap_ok = windows.iter().all(|&(_, b)| b <= 1);

    let candidates: Vec<VertexSet> = if k == 2 {
        let mut c: Vec<VertexSet> = induced_cycles(x, x.num_vertices().max(3))?
            .into_iter()
            .map(|cycle| cycle.into_iter().collect())
            .collect();
        c.sort_unstable_by_key(|s: &VertexSet| (s.len(), s.bits()));
        c
    } else {
        induced_boundary_complexes(x, k)?
    };

    let found = par::map(&windows, |&(w, _)| {
        let window = VertexSet::from_bits(w);
        candidates
            .iter()
            .filter(|s| s.is_subset(window))
            .map(|s| {
                let (kind, cycle) = fundamental_cycle(x, *s, k).expect("candidates are induced");
                let is_generator = !table.restrict(window).is_boundary(&cycle).expect("cycle lies in the window");
                GeneratorWitness { kind, vertices: *s, window, hom_dim: k - 1, is_generator }
            })
            .find(|g| g.is_generator)
    });
    for g in found.iter().flatten() {
        report.windows_certified += 1;
        if !report.witnesses.iter().any(|h| h.vertices == g.vertices) {
            report.witnesses.push(*g);
        }
    }
    report.conclusion_holds =
        Some(report.betti_cap_ok && report.windows_certified == report.windows_with_homology && !windows.is_empty());
    Ok(report)
}
