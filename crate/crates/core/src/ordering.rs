//! Facet orderings and the invariants built on them.
//!
//! For an order `σ_1 ≺ .. ≺ σ_m` write `X_j` for the union of the first `j`
//! facet simplices. The running count `M_≺` starts at 1 and grows by one at
//! every step where `X_{j-1} ∩ Δ(σ_j)` fails to be a simplex. That
//! intersection is the union of the simplices on `σ_i ∩ σ_j` for `i < j`,
//! which is a simplex exactly when one of those intersections contains all
//! the others. The test therefore only depends on the *set* of earlier
//! facets, which makes an exact minimisation over orders a dynamic program
//! over facet subsets instead of a search over permutations.

use crate::complex::{SimplicialComplex, VertexSet};
use crate::error::{Error, Result};
use crate::par;

/// A permutation of the facet indices of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FacetOrdering(Vec<usize>);

impl FacetOrdering {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &i in &perm {
            if i >= perm.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::NotAPermutation);
            }
        }
        Ok(FacetOrdering(perm))
    }

    pub fn identity(m: usize) -> Self {
        FacetOrdering((0..m).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Self {
        FacetOrdering(self.0.iter().rev().copied().collect())
    }
}

/// Size caps for the exponential searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Subset DP for `M(X)` and `γ(X)`: `2^m` states.
    pub dp_max_facets: usize,
    /// Subset DP restricted to weak shellings.
    pub weak_dp_max_facets: usize,
    /// Permutation oracle: `m!` orders.
    pub brute_max_facets: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { dp_max_facets: 24, weak_dp_max_facets: 20, brute_max_facets: 8 }
    }
}

/// Everything one pass over a fixed order computes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderingReport {
    /// `M_≺(X)`.
    pub m_value: usize,
    /// `N_≺(X) = m - |V| + |σ_1| + γ_≺(X)`.
    pub n_value: i64,
    /// `γ_≺(X) = Σ_{j>=2} (dim σ_j - conn_≺ σ_j)`.
    pub gamma: i64,
    /// `conn_≺ σ_j` for positions `j = 2..m`.
    pub conn: Vec<usize>,
    pub is_weak_shelling: bool,
    /// For positions `j = 2..m`: true where the meet with the earlier union
    /// is not a simplex.
    pub step_increments: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MResult {
    pub m: usize,
    pub optimal_order: FacetOrdering,
    pub dp_states_explored: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaResult {
    pub gamma: i64,
    pub optimal_order: FacetOrdering,
}

/// True when one of `meets` contains every other, i.e. the union of their
/// simplices is itself a simplex (possibly `{∅}`).
fn dominated(meets: impl Iterator<Item = VertexSet> + Clone) -> bool {
    let union = meets.clone().fold(VertexSet::EMPTY, |a, b| a | b);
    meets.into_iter().any(|s| s == union)
}

/// Weak-shelling step test: some vertex `u` of the new facet leaves a
/// dominated family once removed from every meet. Only `u` inside the union
/// of the meets can change anything, and if the family is already dominated
/// any vertex of the facet works.
fn weak_step(meets: impl Iterator<Item = VertexSet> + Clone) -> bool {
    let union = meets.clone().fold(VertexSet::EMPTY, |a, b| a | b);
    if meets.clone().any(|s| s == union) {
        return true;
    }
    union.iter().any(|u| {
        let target = union.without(u);
        meets.clone().any(|s| target.is_subset(s))
    })
}

/// Pairwise facet intersections, `meet[i * m + j] = σ_i ∩ σ_j`.
struct Meets {
    m: usize,
    table: Vec<VertexSet>,
}

impl Meets {
    fn new(facets: &[VertexSet]) -> Self {
        let m = facets.len();
        let mut table = Vec::with_capacity(m * m);
        for a in facets {
            for b in facets {
                table.push(*a & *b);
            }
        }
        Meets { m, table }
    }

    fn get(&self, i: usize, j: usize) -> VertexSet {
        self.table[i * self.m + j]
    }

    fn with_mask(&self, mask: u32, j: usize) -> impl Iterator<Item = VertexSet> + Clone + '_ {
        let mut bits = mask;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
        .map(move |i| self.get(i, j))
    }
}

/// Whether `X_prefix ∩ Δ(σ_j)` is a simplex, where `X_prefix` is the union of
/// the facet simplices indexed by `prefix`.
pub fn prefix_meet_is_simplex(facets: &[VertexSet], prefix: &[usize], j: usize) -> Result<bool> {
    if prefix.is_empty() {
        return Err(Error::EmptyPrefix);
    }
    if prefix.contains(&j) {
        return Err(Error::FacetInPrefix(j));
    }
    let m = facets.len();
    if let Some(&bad) = prefix.iter().chain(std::iter::once(&j)).find(|&&i| i >= m) {
        return Err(Error::DimensionMismatch { expected: m, got: bad + 1 });
    }
    Ok(dominated(prefix.iter().map(|&i| facets[i] & facets[j])))
}

/// One pass over `order`: `M_≺`, `N_≺`, `γ_≺`, connectivities and the
/// weak-shelling flag.
pub fn m_of_order(x: &SimplicialComplex, order: &FacetOrdering) -> Result<OrderingReport> {
    x.require_non_void()?;
    let facets = x.facets();
    let m = facets.len();
    if order.len() != m {
        return Err(Error::OrderLength { expected: m, got: order.len() });
    }
    let perm = order.as_slice();
    let mut step_increments = Vec::with_capacity(m.saturating_sub(1));
    let mut conn = Vec::with_capacity(m.saturating_sub(1));
    let mut gamma = 0i64;
    let mut weak = true;
    for pos in 1..m {
        let sigma = facets[perm[pos]];
        let meets = perm[..pos].iter().map(|&i| facets[i] & sigma);
        step_increments.push(!dominated(meets.clone()));
        weak &= weak_step(meets.clone());
        let c = meets.map(VertexSet::len).max().unwrap_or(0);
        conn.push(c);
        gamma += sigma.len() as i64 - 1 - c as i64;
    }
    let m_value = 1 + step_increments.iter().filter(|b| **b).count();
    let n_value = m as i64 - x.num_vertices() as i64 + facets[perm[0]].len() as i64 + gamma;
    Ok(OrderingReport { m_value, n_value, gamma, conn, is_weak_shelling: weak, step_increments })
}

pub fn is_weak_shelling(x: &SimplicialComplex, order: &FacetOrdering) -> Result<bool> {
    Ok(m_of_order(x, order)?.is_weak_shelling)
}

const INFEASIBLE: u16 = u16::MAX;

struct DpOutcome {
    value: Option<u16>,
    order: Option<Vec<usize>>,
    states: u64,
}

/// Exact minimisation over facet orders whose step cost depends only on
/// (set of earlier facets, next facet). `step` returns `None` for forbidden
/// extensions. Layers of equal popcount are evaluated in parallel; ties go to
/// the smallest facet index so the reconstructed order is deterministic.
fn subset_dp<F>(m: usize, first_cost: u16, step: F) -> DpOutcome
where
    F: Fn(u32, usize) -> Option<u16> + Sync + Send,
{
    debug_assert!((1..=31).contains(&m));
    let size = 1usize << m;
    let mut best = vec![INFEASIBLE; size];
    let mut choice = vec![u8::MAX; size];
    for j in 0..m {
        best[1 << j] = first_cost;
        choice[1 << j] = j as u8;
    }
    let mut states = m as u64;
    for k in 2..=m {
        let masks = masks_with_popcount(m, k);
        states += masks.len() as u64;
        let solved = par::map(&masks, |&s| {
            let mut out = (INFEASIBLE, u8::MAX);
            let mut bits = s;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let prev = s & !(1 << j);
                let base = best[prev as usize];
                if base == INFEASIBLE {
                    continue;
                }
                if let Some(cost) = step(prev, j) {
                    let total = base.saturating_add(cost).min(INFEASIBLE - 1);
                    if total < out.0 {
                        out = (total, j as u8);
                    }
                }
            }
            out
        });
        for (&s, (v, c)) in masks.iter().zip(solved) {
            best[s as usize] = v;
            choice[s as usize] = c;
        }
    }
    let full = size - 1;
    if best[full] == INFEASIBLE {
        return DpOutcome { value: None, order: None, states };
    }
    let mut order = Vec::with_capacity(m);
    let mut s = full;
    while s != 0 {
        let j = choice[s] as usize;
        order.push(j);
        s &= !(1 << j);
    }
    order.reverse();
    DpOutcome { value: Some(best[full]), order: Some(order), states }
}

/// All `m`-bit masks with exactly `k` bits set, ascending (Gosper's hack).
fn masks_with_popcount(m: usize, k: usize) -> Vec<u32> {
    let limit = 1u64 << m;
    let mut out = Vec::new();
    let mut x: u64 = (1 << k) - 1;
    while x < limit {
        out.push(x as u32);
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}

fn check_cap(what: &'static str, m: usize, cap: usize) -> Result<()> {
    if m > cap || m > 31 {
        Err(Error::FacetCap { what, m, cap })
    } else {
        Ok(())
    }
}

/// `M(X)`, the minimum of `M_≺(X)` over all facet orders.
pub fn m_number(x: &SimplicialComplex, limits: Limits) -> Result<MResult> {
    x.require_non_void()?;
    let m = x.num_facets();
    check_cap("subset DP", m, limits.dp_max_facets)?;
    let meets = Meets::new(x.facets());
    let out = subset_dp(m, 1, |prev, j| Some(u16::from(!dominated(meets.with_mask(prev, j)))));
    Ok(MResult {
        m: out.value.expect("every order is admissible") as usize,
        optimal_order: FacetOrdering(out.order.expect("every order is admissible")),
        dp_states_explored: out.states,
    })
}

/// Visits every permutation of `items` (Heap's algorithm).
fn for_each_permutation(items: &mut [usize], visit: &mut impl FnMut(&[usize])) {
    let n = items.len();
    let mut c = vec![0usize; n];
    visit(items);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            visit(items);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// `M(X)` by evaluating every one of the `m!` orders.
pub fn m_number_bruteforce(x: &SimplicialComplex, limits: Limits) -> Result<usize> {
    x.require_non_void()?;
    let m = x.num_facets();
    check_cap("permutation oracle", m, limits.brute_max_facets)?;
    let facets = x.facets();
    let firsts: Vec<usize> = (0..m).collect();
    let per_first = par::map(&firsts, |&first| {
        let mut rest: Vec<usize> = (0..m).filter(|&i| i != first).collect();
        let mut best = usize::MAX;
        for_each_permutation(&mut rest, &mut |tail| {
            let mut value = 1;
            for pos in 0..tail.len() {
                let sigma = facets[tail[pos]];
                let meets = std::iter::once(first).chain(tail[..pos].iter().copied()).map(|i| facets[i] & sigma);
                if !dominated(meets) {
                    value += 1;
                }
            }
            best = best.min(value);
        });
        best
    });
    Ok(per_first.into_iter().min().unwrap_or(1))
}

/// Minimum of `M_≺` over weak shellings only, with an optimal order; `None`
/// when the complex admits no weak shelling.
pub fn weak_shelling_min_m(x: &SimplicialComplex, limits: Limits) -> Result<Option<(usize, FacetOrdering)>> {
    x.require_non_void()?;
    let m = x.num_facets();
    check_cap("weak-shelling DP", m, limits.weak_dp_max_facets)?;
    let meets = Meets::new(x.facets());
    let out = subset_dp(m, 1, |prev, j| {
        let family = meets.with_mask(prev, j);
        weak_step(family.clone()).then(|| u16::from(!dominated(family)))
    });
    Ok(out.value.zip(out.order).map(|(v, o)| (v as usize, FacetOrdering(o))))
}

/// `γ(X)`, the minimum of `γ_≺(X)` over all facet orders.
pub fn gamma_min(x: &SimplicialComplex, limits: Limits) -> Result<GammaResult> {
    x.require_non_void()?;
    let m = x.num_facets();
    check_cap("subset DP", m, limits.dp_max_facets)?;
    let facets = x.facets();
    let meets = Meets::new(facets);
    let out = subset_dp(m, 0, |prev, j| {
        let conn = meets.with_mask(prev, j).map(VertexSet::len).max().unwrap_or(0);
        // conn < |σ_j| for distinct facets of an antichain
        Some((facets[j].len() - 1 - conn) as u16)
    });
    Ok(GammaResult {
        gamma: i64::from(out.value.expect("every order is admissible")),
        optimal_order: FacetOrdering(out.order.expect("every order is admissible")),
    })
}
