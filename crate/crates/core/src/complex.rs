//! Abstract simplicial complexes stored by their facets.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use crate::error::{Error, Result};
use crate::union_find::UnionFind;

/// Hard cap on the vertex universe: one machine word per vertex set.
pub const MAX_VERTICES: usize = 64;

/// A set of vertex indices in `0..64`, stored as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Result<Self> {
        let mut bits = 0u64;
        for v in indices {
            if v >= MAX_VERTICES {
                return Err(Error::TooManyVertices(v + 1));
            }
            bits |= 1 << v;
        }
        Ok(VertexSet(bits))
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        assert!(v < MAX_VERTICES);
        VertexSet(1 << v)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    #[must_use]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1 << v)
    }

    #[must_use]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Members {
        Members(self.0)
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> Subsets {
        Subsets { mask: self.0, next: Some(0) }
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

/// Submask enumeration in increasing numeric order.
pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let cur = self.next?;
        self.next = if cur == self.mask { None } else { Some((cur.wrapping_sub(self.mask)) & self.mask) };
        Some(VertexSet(cur))
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & rhs.0)
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 | rhs.0)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & !rhs.0)
    }
}

impl FromIterator<usize> for VertexSet {
    /// Panics on indices >= 64; use [`VertexSet::from_indices`] for untrusted input.
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_indices(iter).expect("vertex index >= 64")
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Canonical facet order: by size, then by numeric bit value.
pub fn canonical_cmp(a: &VertexSet, b: &VertexSet) -> Ordering {
    (a.len(), a.bits()).cmp(&(b.len(), b.bits()))
}

/// Inclusion-maximal members of `sets`, deduplicated, in canonical order.
pub fn maximal_sets(sets: impl IntoIterator<Item = VertexSet>) -> Vec<VertexSet> {
    let mut all: Vec<VertexSet> = sets.into_iter().collect();
    all.sort_unstable_by(|a, b| canonical_cmp(b, a));
    all.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(all.len());
    for s in all {
        if !kept.iter().any(|k| s.is_subset(*k)) {
            kept.push(s);
        }
    }
    kept.sort_unstable_by(canonical_cmp);
    kept
}

/// Inclusion-minimal members of `sets`, deduplicated, in canonical order.
pub fn minimal_sets(sets: impl IntoIterator<Item = VertexSet>) -> Vec<VertexSet> {
    let mut all: Vec<VertexSet> = sets.into_iter().collect();
    all.sort_unstable_by(canonical_cmp);
    all.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(all.len());
    for s in all {
        if !kept.iter().any(|k| k.is_subset(s)) {
            kept.push(s);
        }
    }
    kept
}

/// Orders strings so that embedded digit runs compare numerically
/// (`x2 < x10`).
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for ((da, sa), (db, sb)) in ca.iter().zip(cb.iter()) {
        let ord = if *da && *db {
            let (ta, tb) = (sa.trim_start_matches('0'), sb.trim_start_matches('0'));
            ta.len().cmp(&tb.len()).then_with(|| ta.cmp(tb)).then_with(|| sa.len().cmp(&sb.len()))
        } else {
            sa.cmp(sb)
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len())
}

/// Face counts `f_{-1}, f_0, .., f_{d-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FVector {
    pub counts: Vec<u64>,
}

impl FVector {
    /// Number of faces of dimension `k` (`k >= -1`).
    pub fn get(&self, k: i32) -> u64 {
        usize::try_from(k + 1).ok().and_then(|i| self.counts.get(i).copied()).unwrap_or(0)
    }
}

/// A finite abstract simplicial complex, kept as a canonical antichain of
/// facets over a labelled vertex universe.
///
/// Every vertex id in `0..labels.len()` lies in some facet. The void complex
/// has no facets; the complex `{∅}` has the single empty facet.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    facets: Vec<VertexSet>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let facets: Vec<String> = self.facets.iter().map(|s| self.labels_of(*s).join(" ")).collect();
        f.debug_struct("SimplicialComplex").field("labels", &self.labels).field("facets", &facets).finish()
    }
}

impl SimplicialComplex {
    pub fn from_facets(raw: Vec<VertexSet>, labels: Vec<String>) -> Result<Self> {
        let n = labels.len();
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let mut seen = HashSet::with_capacity(n);
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let universe = VertexSet::full(n);
        let mut used = VertexSet::EMPTY;
        for s in &raw {
            let stray = *s - universe;
            if let Some(index) = stray.min() {
                return Err(Error::VertexOutOfRange { index, universe: n });
            }
            used = used | *s;
        }
        if let Some(v) = (universe - used).min() {
            return Err(Error::UnusedLabel(labels[v].clone()));
        }
        Ok(SimplicialComplex { labels, facets: maximal_sets(raw) })
    }

    /// Builds a complex from facets written as label lists. Labels are
    /// numbered in natural order.
    pub fn from_label_sets<S: AsRef<str>>(facets: &[Vec<S>]) -> Result<Self> {
        let mut labels: Vec<String> = facets.iter().flatten().map(|s| s.as_ref().to_string()).collect();
        labels.sort_by(|a, b| natural_cmp(a, b));
        labels.dedup();
        if labels.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices(labels.len()));
        }
        let raw = facets
            .iter()
            .map(|f| {
                f.iter()
                    .map(|l| labels.iter().position(|x| x == l.as_ref()).expect("label collected above"))
                    .collect()
            })
            .collect();
        SimplicialComplex::from_facets(raw, labels)
    }

    pub fn void() -> Self {
        SimplicialComplex { labels: Vec::new(), facets: Vec::new() }
    }

    /// The complex `{∅}`: a simplex on the empty vertex set.
    pub fn empty_face() -> Self {
        SimplicialComplex { labels: Vec::new(), facets: vec![VertexSet::EMPTY] }
    }

    /// The full simplex on `labels`.
    pub fn simplex(labels: Vec<String>) -> Result<Self> {
        let n = labels.len();
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        SimplicialComplex::from_facets(vec![VertexSet::full(n)], labels)
    }

    /// The boundary of the simplex on `n >= 1` vertices labelled `1..=n`.
    pub fn simplex_boundary(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::Config(format!("boundary of a simplex needs 1..=64 vertices, got {n}")));
        }
        let full = VertexSet::full(n);
        let facets = (0..n).map(|v| full.without(v)).collect();
        let labels = (1..=n).map(|v| v.to_string()).collect();
        if n == 1 {
            // ∂Δ(1) = {∅}
            return Ok(SimplicialComplex::empty_face());
        }
        SimplicialComplex::from_facets(facets, labels)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn universe(&self) -> VertexSet {
        VertexSet::full(self.labels.len())
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_empty_face_complex(&self) -> bool {
        self.facets.len() == 1 && self.facets[0].is_empty()
    }

    pub(crate) fn require_non_void(&self) -> Result<()> {
        if self.is_void() {
            Err(Error::VoidComplex)
        } else {
            Ok(())
        }
    }

    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The vertex set named by `labels`, or `None` if a label is unknown.
    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Option<VertexSet> {
        labels.iter().map(|l| self.vertex(l.as_ref())).collect::<Option<Vec<_>>>().map(|v| v.into_iter().collect())
    }

    pub fn labels_of(&self, set: VertexSet) -> Vec<&str> {
        set.iter().map(|v| self.labels[v].as_str()).collect()
    }

    /// Maximal elements of `{σ ∩ W}` in the original vertex numbering.
    pub fn induced_facets(&self, window: VertexSet) -> Vec<VertexSet> {
        maximal_sets(self.facets.iter().map(|f| *f & window))
    }

    /// The induced subcomplex `X[W]`, relabelled onto `0..|W|` with the
    /// relative vertex order preserved.
    pub fn induced(&self, window: VertexSet) -> SimplicialComplex {
        let window = window & self.universe();
        if self.is_void() {
            return SimplicialComplex::void();
        }
        let members: Vec<usize> = window.iter().collect();
        let relabel = |s: VertexSet| -> VertexSet {
            VertexSet::from_bits(
                members.iter().enumerate().filter(|(_, v)| s.contains(**v)).fold(0u64, |acc, (i, _)| acc | 1 << i),
            )
        };
        SimplicialComplex {
            labels: members.iter().map(|&v| self.labels[v].clone()).collect(),
            facets: maximal_sets(self.facets.iter().map(|f| relabel(*f & window))),
        }
    }

    pub fn is_simplex(&self) -> Result<bool> {
        self.require_non_void()?;
        Ok(self.facets.len() == 1)
    }

    pub fn dimension(&self) -> Result<i32> {
        self.require_non_void()?;
        Ok(self.facets.iter().map(|f| f.len() as i32).max().unwrap_or(0) - 1)
    }

    /// All faces of dimension `k`, sorted by numeric value.
    pub fn faces_of_dim(&self, k: i32) -> Result<Vec<VertexSet>> {
        self.require_non_void()?;
        if k < -1 {
            return Ok(Vec::new());
        }
        let size = (k + 1) as usize;
        let mut faces: Vec<VertexSet> = self
            .facets
            .iter()
            .filter(|f| f.len() >= size)
            .flat_map(|f| f.subsets().filter(move |s| s.len() == size))
            .collect();
        faces.sort_unstable();
        faces.dedup();
        Ok(faces)
    }

    pub fn f_vector(&self) -> Result<FVector> {
        let dim = self.dimension()?;
        let counts = (-1..=dim).map(|k| self.faces_of_dim(k).map(|f| f.len() as u64)).collect::<Result<_>>()?;
        Ok(FVector { counts })
    }

    pub fn is_face(&self, face: VertexSet) -> bool {
        self.facets.iter().any(|f| face.is_subset(*f))
    }

    /// Inclusion-minimal non-faces, in canonical order.
    ///
    /// Level-wise search: a minimal non-face of size `s` has every
    /// `(s-1)`-subset a face, so candidates only extend faces of the previous
    /// level and the search stops at the first level without faces.
    pub fn minimal_nonfaces(&self) -> Result<Vec<VertexSet>> {
        self.require_non_void()?;
        let n = self.num_vertices();
        let mut nonfaces = Vec::new();
        let mut level: HashSet<VertexSet> = (0..n).map(VertexSet::singleton).collect();
        while !level.is_empty() {
            let mut next = HashSet::new();
            let mut ordered: Vec<VertexSet> = level.iter().copied().collect();
            ordered.sort_unstable();
            for face in ordered {
                let start = face.max().map_or(0, |m| m + 1);
                for v in start..n {
                    let cand = face.with(v);
                    if !cand.iter().all(|u| level.contains(&cand.without(u))) {
                        continue;
                    }
                    if self.is_face(cand) {
                        next.insert(cand);
                    } else {
                        nonfaces.push(cand);
                    }
                }
            }
            level = next;
        }
        nonfaces.sort_unstable_by(canonical_cmp);
        Ok(nonfaces)
    }

    pub fn is_pure(&self) -> Result<bool> {
        self.require_non_void()?;
        let size = self.facets[0].len();
        Ok(self.facets.iter().all(|f| f.len() == size))
    }

    /// Strong connectivity of a pure complex: the facets are linked through
    /// codimension-one intersections.
    pub fn is_strongly_connected(&self) -> Result<bool> {
        if !self.is_pure()? {
            return Err(Error::NotPure);
        }
        let m = self.facets.len();
        let ridge = self.facets[0].len().saturating_sub(1);
        let mut uf = UnionFind::new(m);
        let mut components = m;
        for i in 0..m {
            for j in i + 1..m {
                if (self.facets[i] & self.facets[j]).len() == ridge && uf.union(i, j) {
                    components -= 1;
                }
            }
        }
        Ok(components == 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn oct4() -> SimplicialComplex {
        SimplicialComplex::from_label_sets(&[vec!["1", "2", "4"], vec!["1", "3", "5"], vec!["2", "3", "6"], vec![
            "4", "5", "6",
        ]])
        .unwrap()
    }

    fn labelled(x: &SimplicialComplex, sets: &[VertexSet]) -> Vec<String> {
        let mut out: Vec<String> = sets.iter().map(|s| x.labels_of(*s).concat()).collect();
        out.sort();
        out
    }

    #[test]
    fn drops_dominated_and_duplicate_facets() {
        let x = SimplicialComplex::from_facets(vec![vs(&[0, 1]), vs(&[0]), vs(&[1, 0])], vec!["a".into(), "b".into()])
            .unwrap();
        assert_eq!(x.facets(), &[vs(&[0, 1])]);
    }

    #[test]
    fn empty_input_is_void() {
        let x = SimplicialComplex::from_facets(vec![], vec![]).unwrap();
        assert!(x.is_void());
        assert_eq!(x.is_simplex(), Err(Error::VoidComplex));
    }

    #[test]
    fn rejects_bad_indices_and_unused_labels() {
        let labels = vec!["a".to_string(), "b".to_string()];
        assert!(matches!(
            SimplicialComplex::from_facets(vec![vs(&[0, 2])], labels.clone()),
            Err(Error::VertexOutOfRange { index: 2, .. })
        ));
        assert_eq!(SimplicialComplex::from_facets(vec![vs(&[0])], labels), Err(Error::UnusedLabel("b".into())));
    }

    #[test]
    fn oct4_from_indices() {
        let labels: Vec<String> = (1..=6).map(|v| v.to_string()).collect();
        let raw = vec![vs(&[0, 1, 3]), vs(&[0, 2, 4]), vs(&[1, 2, 5]), vs(&[3, 4, 5])];
        let x = SimplicialComplex::from_facets(raw, labels).unwrap();
        assert_eq!(x, oct4());
        assert_eq!(x.num_facets(), 4);
    }

    #[test]
    fn induced_windows() {
        let x = oct4();
        let w = x.set_of(&["1", "2", "3"]).unwrap();
        let y = x.induced(w);
        assert_eq!(labelled(&y, y.facets()), vec!["12", "13", "23"]);
        assert_eq!(x.induced(x.universe()), x);
        let y = x.induced(x.set_of(&["1", "6"]).unwrap());
        assert_eq!(labelled(&y, y.facets()), vec!["1", "6"]);
        assert_eq!(x.induced(VertexSet::EMPTY), SimplicialComplex::empty_face());
    }

    #[test]
    fn simplexhood() {
        let tri = SimplicialComplex::from_label_sets(&[vec!["0", "1", "2"]]).unwrap();
        assert!(tri.is_simplex().unwrap());
        assert!(SimplicialComplex::empty_face().is_simplex().unwrap());
        assert!(!oct4().is_simplex().unwrap());
    }

    #[test]
    fn faces_and_f_vector() {
        let x = oct4();
        assert_eq!(x.f_vector().unwrap().counts, vec![1, 6, 12, 4]);
        assert_eq!(SimplicialComplex::simplex_boundary(4).unwrap().dimension().unwrap(), 2);
        assert_eq!(SimplicialComplex::empty_face().faces_of_dim(-1).unwrap(), vec![VertexSet::EMPTY]);
        assert!(x.faces_of_dim(3).unwrap().is_empty());
    }

    #[test]
    fn face_membership() {
        let x = oct4();
        assert!(!x.is_face(x.set_of(&["1", "2", "3"]).unwrap()));
        assert!(x.is_face(x.set_of(&["4", "5", "6"]).unwrap()));
        assert!(x.is_face(VertexSet::EMPTY));
    }

    #[test]
    fn oct4_minimal_nonfaces_match_generators() {
        let x = oct4();
        let got = labelled(&x, &x.minimal_nonfaces().unwrap());
        let mut want: Vec<String> =
            ["123", "34", "25", "145", "16", "246", "356"].iter().map(|s| s.to_string()).collect();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn minimal_nonfaces_trivial_cases() {
        let tri = SimplicialComplex::from_label_sets(&[vec!["a", "b", "c"]]).unwrap();
        assert!(tri.minimal_nonfaces().unwrap().is_empty());
        let two = SimplicialComplex::from_label_sets(&[vec!["a"], vec!["b"]]).unwrap();
        assert_eq!(two.minimal_nonfaces().unwrap(), vec![vs(&[0, 1])]);
        assert!(SimplicialComplex::empty_face().minimal_nonfaces().unwrap().is_empty());
    }

    #[test]
    fn purity_and_strong_connectivity() {
        let sc8 = SimplicialComplex::from_label_sets(
            &["1235", "1356", "1346", "1467", "1247", "3468", "2348"]
                .iter()
                .map(|f| f.chars().map(|c| c.to_string()).collect())
                .collect::<Vec<Vec<String>>>(),
        )
        .unwrap();
        assert!(sc8.is_pure().unwrap());
        assert!(sc8.is_strongly_connected().unwrap());

        let pent5 = SimplicialComplex::from_label_sets(
            &["1234", "125", "235", "345", "145"]
                .iter()
                .map(|f| f.chars().map(|c| c.to_string()).collect())
                .collect::<Vec<Vec<String>>>(),
        )
        .unwrap();
        assert!(!pent5.is_pure().unwrap());
        assert_eq!(pent5.is_strongly_connected(), Err(Error::NotPure));

        let tri = SimplicialComplex::from_label_sets(&[vec!["a", "b", "c"]]).unwrap();
        assert!(tri.is_pure().unwrap() && tri.is_strongly_connected().unwrap());
        let disjoint_edges = SimplicialComplex::from_label_sets(&[vec!["a", "b"], vec!["c", "d"]]).unwrap();
        assert!(!disjoint_edges.is_strongly_connected().unwrap());
    }

    #[test]
    fn subsets_enumerates_all_submasks() {
        let s = vs(&[1, 3, 4]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
        assert!(subs.iter().all(|t| t.is_subset(s)));
        assert_eq!(VertexSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn natural_order() {
        let mut v = vec!["x10", "x2", "x1", "a", "z01", "z00"];
        v.sort_by(|a, b| natural_cmp(a, b));
        assert_eq!(v, vec!["a", "x1", "x2", "x10", "z00", "z01"]);
    }
}
