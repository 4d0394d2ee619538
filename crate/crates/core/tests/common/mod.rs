//! Shared fixtures and definition-level oracles. The oracles deliberately
//! avoid the library's face tables and bit-packed matrices.
#![allow(dead_code)]

use std::path::PathBuf;

use leray_lab::cli::{self, ExploreConfig};
use leray_lab::complex::{maximal_sets, SimplicialComplex, VertexSet};
use proptest::prelude::*;

/// Single-character labels: `cx(&["124", "135"])`.
pub fn cx(facets: &[&str]) -> SimplicialComplex {
    let sets: Vec<Vec<String>> = facets.iter().map(|f| f.chars().map(|c| c.to_string()).collect()).collect();
    SimplicialComplex::from_label_sets(&sets).unwrap()
}

pub fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

pub fn corpus(name: &str) -> SimplicialComplex {
    cli::parse_complex(&std::fs::read_to_string(corpus_path(name)).unwrap()).unwrap()
}

pub fn set(x: &SimplicialComplex, s: &str) -> VertexSet {
    let labels: Vec<String> = s.chars().map(|c| c.to_string()).collect();
    x.set_of(&labels).unwrap()
}

/// Index of the facet spelled `s` in canonical order.
pub fn facet_index(x: &SimplicialComplex, s: &str) -> usize {
    let target = set(x, s);
    x.facets().iter().position(|f| *f == target).unwrap()
}

/// Relabels the used vertices of `raw` onto `1..=k`.
pub fn complex_from_masks(raw: &[u64]) -> SimplicialComplex {
    let facets = maximal_sets(raw.iter().map(|&b| VertexSet::from_bits(b)));
    let used = facets.iter().fold(0u64, |a, f| a | f.bits());
    let rank = |v: usize| (used & ((1u64 << v) - 1)).count_ones() as usize;
    let relabelled = facets.iter().map(|f| f.iter().map(rank).collect()).collect();
    let labels = (1..=used.count_ones()).map(|v| v.to_string()).collect();
    SimplicialComplex::from_facets(relabelled, labels).unwrap()
}

/// Complexes on at most `max_n` vertices with at most `max_m` facets.
pub fn arb_complex(max_n: usize, max_m: usize) -> impl Strategy<Value = SimplicialComplex> {
    (1..=max_n)
        .prop_flat_map(move |n| prop::collection::vec(1u64..(1u64 << n), 1..=max_m))
        .prop_map(|masks| complex_from_masks(&masks))
}

/// A deterministic family of sampled complexes: the `i`-th member uses the
/// explorer stream with sizes cycling through `min_n..=max_n` vertices and
/// `2..=max_m` facets.
pub fn sampled(i: u64, seed: u64, min_n: usize, max_n: usize, max_m: usize) -> SimplicialComplex {
    let spread = (max_n - min_n + 1) as u64;
    let n = min_n + (i % spread) as usize;
    let m = 2 + ((i / spread) % (max_m as u64 - 1)) as usize;
    let cfg = ExploreConfig { dim_max: Some((n - 2).min(4)), ..ExploreConfig::new(n, m, 1, seed) };
    cli::random_complex(&cfg, i).unwrap()
}

/// All faces of the complex, grouped by size, from the facets alone.
pub fn faces_by_size(x: &SimplicialComplex) -> Vec<Vec<u64>> {
    let mut all = std::collections::BTreeSet::new();
    for f in x.facets() {
        let bits = f.bits();
        let mut sub = bits;
        loop {
            all.insert(sub);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & bits;
        }
    }
    let top = all.iter().map(|s| s.count_ones() as usize).max().unwrap_or(0);
    let mut out = vec![Vec::new(); top + 1];
    for s in all {
        out[s.count_ones() as usize].push(s);
    }
    out
}

/// Rank over GF(2) of a dense boolean matrix.
pub fn dense_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] {
                for (a, b) in row.iter_mut().zip(&pivot) {
                    *a ^= *b;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of the map from faces of size `k` to faces of size `k - 1`.
fn boundary_rank(faces: &[Vec<u64>], k: usize) -> usize {
    if k == 0 || k >= faces.len() {
        return 0;
    }
    let rows: Vec<Vec<bool>> = faces[k - 1]
        .iter()
        .map(|&lower| faces[k].iter().map(|&upper| upper & lower == lower).collect())
        .collect();
    dense_rank(rows)
}

/// Reduced GF(2) Betti numbers `β̃_0..=β̃_dim`; empty for `{∅}`.
pub fn betti_oracle(x: &SimplicialComplex) -> Vec<usize> {
    let faces = faces_by_size(x);
    (1..faces.len())
        .map(|k| faces[k].len() - boundary_rank(&faces, k) - boundary_rank(&faces, k + 1))
        .collect()
}

/// `L(X)` straight from the definition.
pub fn leray_oracle(x: &SimplicialComplex) -> usize {
    (0u64..1 << x.num_vertices())
        .filter_map(|w| betti_oracle(&x.induced(VertexSet::from_bits(w))).iter().rposition(|b| *b != 0))
        .max()
        .map_or(0, |i| i + 1)
}

/// Every permutation of `0..m`.
pub fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

/// `γ_≺` from its definition: `Σ_{j>=2} (dim σ_j - max_{i<j} |σ_i ∩ σ_j|)`.
pub fn gamma_of(facets: &[VertexSet], order: &[usize]) -> i64 {
    (1..order.len())
        .map(|j| {
            let s = facets[order[j]];
            let conn = order[..j].iter().map(|&i| (facets[i] & s).len()).max().unwrap();
            s.len() as i64 - 1 - conn as i64
        })
        .sum()
}

pub fn gamma_brute(x: &SimplicialComplex) -> i64 {
    permutations(x.num_facets()).iter().map(|p| gamma_of(x.facets(), p)).min().unwrap()
}

/// `X_j`: the complex generated by the first `j` facets of `order`.
pub fn prefix_complex(x: &SimplicialComplex, order: &[usize], j: usize) -> SimplicialComplex {
    let masks: Vec<u64> = order[..j].iter().map(|&i| x.facets()[i].bits()).collect();
    complex_from_masks(&masks)
}

/// Minimal nonfaces by exhaustive search over subsets of the universe.
pub fn minimal_nonfaces_oracle(x: &SimplicialComplex) -> Vec<VertexSet> {
    let is_face = |s: u64| x.facets().iter().any(|f| s & f.bits() == s);
    let mut out: Vec<VertexSet> = (0u64..1 << x.num_vertices())
        .filter(|&s| !is_face(s) && VertexSet::from_bits(s).iter().all(|v| is_face(s & !(1 << v))))
        .map(VertexSet::from_bits)
        .collect();
    out.sort_by_key(|s| (s.len(), s.bits()));
    out
}
