//! Square-free monomial ideals and the Stanley-Reisner correspondence.

use std::fmt;

use crate::complex::{maximal_sets, minimal_sets, natural_cmp, SimplicialComplex, VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};
use crate::leray;
use crate::ordering::{self, FacetOrdering, Limits};

/// A square-free monomial ideal, stored by the supports of its minimal
/// generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    vars: Vec<String>,
    gens: Vec<VertexSet>,
}

impl MonomialIdeal {
    /// Non-minimal generators are dropped.
    pub fn new(vars: Vec<String>, gens: Vec<VertexSet>) -> Result<Self> {
        if vars.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices(vars.len()));
        }
        let universe = VertexSet::full(vars.len());
        for g in &gens {
            if g.is_empty() {
                return Err(Error::Config("the unit ideal (empty generator) is not supported".into()));
            }
            if let Some(index) = (*g - universe).min() {
                return Err(Error::VertexOutOfRange { index, universe: vars.len() });
            }
        }
        Ok(MonomialIdeal { vars, gens: minimal_sets(gens) })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Generator supports in canonical (size, value) order.
    pub fn gens(&self) -> &[VertexSet] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    fn monomial(&self, g: VertexSet) -> String {
        g.iter().map(|v| self.vars[v].as_str()).collect::<Vec<_>>().join("*")
    }

    /// Generators sorted by their variable index sequences.
    pub fn sorted_gens(&self) -> Vec<VertexSet> {
        let mut gens = self.gens.clone();
        gens.sort_by_key(|g| g.iter().collect::<Vec<_>>());
        gens
    }

    /// The generator list prefixed by a `#vars` line, so that variables
    /// absent from every generator survive a round trip.
    pub fn to_file_string(&self) -> String {
        format!("#vars {}\n{}\n", self.vars.join(" "), self)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.sorted_gens().into_iter().map(|g| self.monomial(g)).collect();
        f.write_str(&parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedIdeal {
    pub ideal: MonomialIdeal,
    /// One entry per generator dropped as non-minimal.
    pub warnings: Vec<String>,
}

/// Any label a complex file can hold, minus `*` and `^`; a lone `0` is
/// reserved for the zero ideal.
fn is_var_name(s: &str) -> bool {
    !s.is_empty() && s != "0" && !s.contains(|c: char| c.is_whitespace() || matches!(c, ',' | '*' | '#' | '^'))
}

/// Parses generators separated by commas or newlines; each generator is a
/// product of variables joined by `*` or whitespace. An optional
/// `#vars a b c` line fixes the variable order; otherwise variables are
/// numbered in natural order. Other `#` text is a comment and a lone `0` is
/// the zero ideal.
pub fn parse_ideal(text: &str) -> Result<ParsedIdeal> {
    let mut declared: Option<Vec<String>> = None;
    // (line, column, variable names)
    let mut raw: Vec<(usize, usize, Vec<String>)> = Vec::new();
    let mut saw_zero = false;

    for (ln, line) in text.lines().enumerate() {
        let ln = ln + 1;
        let (body, comment) = match line.find('#') {
            Some(p) => (&line[..p], Some(&line[p..])),
            None => (line, None),
        };
        if let Some(rest) = comment.and_then(|c| c.strip_prefix("#vars")) {
            if !body.trim().is_empty() {
                return Err(Error::parse(ln, 1, "#vars must be on its own line"));
            }
            if declared.is_some() {
                return Err(Error::parse(ln, 1, "duplicate #vars line"));
            }
            let vars: Vec<String> = rest.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).map(str::to_string).collect();
            for v in &vars {
                if !is_var_name(v) {
                    return Err(Error::parse(ln, 1, format!("invalid variable name {v:?}")));
                }
            }
            declared = Some(vars);
            continue;
        }
        if body.trim().is_empty() {
            continue;
        }
        let segments: Vec<(usize, &str)> = {
            let mut out = Vec::new();
            let mut start = 0;
            for (i, c) in body.char_indices() {
                if c == ',' {
                    out.push((start, &body[start..i]));
                    start = i + 1;
                }
            }
            out.push((start, &body[start..]));
            out
        };
        let last = segments.len() - 1;
        for (k, (offset, seg)) in segments.into_iter().enumerate() {
            let col = offset + seg.len() - seg.trim_start().len() + 1;
            let seg = seg.trim();
            if seg.is_empty() {
                // a trailing comma continues the list on the next line
                if k == last && last > 0 {
                    continue;
                }
                return Err(Error::parse(ln, col, "empty generator"));
            }
            if seg == "0" {
                saw_zero = true;
                continue;
            }
            let mut names = Vec::new();
            let mut pos = col;
            for part in seg.split('*') {
                let lead = part.len() - part.trim_start().len();
                let words: Vec<&str> = part.split_whitespace().collect();
                if words.is_empty() {
                    return Err(Error::parse(ln, pos, "missing variable around '*'"));
                }
                for w in words {
                    if !is_var_name(w) {
                        let at = pos + lead + part.trim_start().find(w).unwrap_or(0);
                        return Err(Error::parse(ln, at, format!("unparseable token {w:?}")));
                    }
                    if names.iter().any(|n| n == w) {
                        return Err(Error::parse(ln, col, format!("generator {seg:?} is not square-free ({w} repeated)")));
                    }
                    names.push(w.to_string());
                }
                pos += part.len() + 1;
            }
            raw.push((ln, col, names));
        }
    }
    if saw_zero && !raw.is_empty() {
        return Err(Error::parse(1, 1, "0 cannot be mixed with other generators"));
    }

    let vars = match declared {
        Some(v) => {
            let mut sorted = v.clone();
            sorted.sort();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::parse(1, 1, "duplicate variable in #vars"));
            }
            v
        }
        None => {
            let mut v: Vec<String> = raw.iter().flat_map(|(_, _, names)| names.iter().cloned()).collect();
            v.sort_by(|a, b| natural_cmp(a, b));
            v.dedup();
            v
        }
    };
    if vars.len() > MAX_VERTICES {
        return Err(Error::TooManyVertices(vars.len()));
    }
    let mut supports = Vec::with_capacity(raw.len());
    for (ln, col, names) in &raw {
        let mut s = VertexSet::EMPTY;
        for n in names {
            let v = vars
                .iter()
                .position(|x| x == n)
                .ok_or_else(|| Error::parse(*ln, *col, format!("variable {n} not declared in #vars")))?;
            s = s.with(v);
        }
        supports.push(s);
    }
    let ideal = MonomialIdeal::new(vars, supports.clone())?;
    let mut warnings = Vec::new();
    let mut kept = ideal.gens.clone();
    for s in supports {
        if let Some(pos) = kept.iter().position(|g| *g == s) {
            // first occurrence of a minimal generator is the one kept
            kept.remove(pos);
        } else {
            let by = ideal.gens.iter().find(|g| g.is_subset(s)).expect("minimal generator divides it");
            warnings.push(format!("generator {} dropped: divisible by {}", ideal.monomial(s), ideal.monomial(*by)));
        }
    }
    Ok(ParsedIdeal { ideal, warnings })
}

/// Variables that are themselves generators; they are not vertices of the
/// Stanley-Reisner complex.
pub fn degree_one_variables(ideal: &MonomialIdeal) -> Vec<String> {
    ideal.gens.iter().filter(|g| g.len() == 1).map(|g| ideal.vars[VertexSet::min(*g).unwrap()].clone()).collect()
}

/// Maximal sets inside `allowed` containing no generator support, by
/// branching on which vertex of the first violated generator to drop.
fn independent_sets(allowed: VertexSet, gens: &[VertexSet], out: &mut Vec<VertexSet>) {
    if out.iter().any(|f| allowed.is_subset(*f)) {
        return;
    }
    match gens.iter().find(|g| g.is_subset(allowed)) {
        None => out.push(allowed),
        Some(g) => {
            for v in g.iter() {
                independent_sets(allowed.without(v), gens, out);
            }
        }
    }
}

/// The Stanley-Reisner complex: faces are the supports of monomials outside
/// the ideal. Degree-one generators remove their variable from the vertex
/// universe; if nothing is left the result is `{∅}`.
pub fn ideal_to_complex(ideal: &MonomialIdeal) -> Result<SimplicialComplex> {
    let removed = ideal.gens.iter().filter(|g| g.len() == 1).fold(VertexSet::EMPTY, |a, g| a | *g);
    let kept: Vec<usize> = (0..ideal.vars.len()).filter(|v| !removed.contains(*v)).collect();
    let labels: Vec<String> = kept.iter().map(|&v| ideal.vars[v].clone()).collect();
    let relabel = |s: VertexSet| -> VertexSet { kept.iter().enumerate().filter(|(_, v)| s.contains(**v)).map(|(i, _)| i).collect() };
    let gens: Vec<VertexSet> = ideal.gens.iter().filter(|g| g.len() > 1).map(|g| relabel(*g)).collect();
    if labels.is_empty() {
        return Ok(SimplicialComplex::empty_face());
    }
    let mut found = Vec::new();
    independent_sets(VertexSet::full(labels.len()), &gens, &mut found);
    SimplicialComplex::from_facets(maximal_sets(found), labels)
}

/// The Stanley-Reisner ideal: minimal non-faces as generators.
pub fn complex_to_ideal(x: &SimplicialComplex) -> Result<MonomialIdeal> {
    let gens = x.minimal_nonfaces()?;
    MonomialIdeal::new(x.labels().to_vec(), gens)
}

fn require_proper(x: &SimplicialComplex) -> Result<()> {
    x.require_non_void()?;
    if x.is_empty_face_complex() {
        return Err(Error::EmptyFaceComplex);
    }
    Ok(())
}

fn top_size(x: &SimplicialComplex) -> usize {
    x.facets().iter().map(|f| f.len()).max().unwrap_or(0)
}

/// `deg k[X]`: the number of top-dimensional facets.
pub fn degree(x: &SimplicialComplex) -> Result<usize> {
    require_proper(x)?;
    let top = top_size(x);
    Ok(x.facets().iter().filter(|f| f.len() == top).count())
}

/// `codim k[X] = |V| - (dim X + 1)`.
pub fn codim(x: &SimplicialComplex) -> Result<usize> {
    require_proper(x)?;
    Ok(x.num_vertices() - top_size(x))
}

/// `α(X)`: facets of dimension strictly below `dim X`.
pub fn alpha(x: &SimplicialComplex) -> Result<usize> {
    Ok(x.num_facets() - degree(x)?)
}

/// The weak Eisenbud-Goto comparison for `I_X`. Betti data are computed over
/// GF(2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EgReport {
    pub reg: i64,
    pub deg: i64,
    pub codim: i64,
    pub alpha: i64,
    pub gamma: i64,
    /// `deg - codim + 1 + α + γ`.
    pub weak_eg_bound: i64,
    /// `deg - codim + 1`.
    pub classic_eg_bound: i64,
    pub weak_holds: bool,
    pub classic_holds: bool,
    /// A facet order attaining `γ(X)`.
    pub witness_order: FacetOrdering,
}

pub fn eg_report(x: &SimplicialComplex, limits: Limits) -> Result<EgReport> {
    require_proper(x)?;
    let reg = leray::regularity(x)? as i64;
    let deg = degree(x)? as i64;
    let codim = codim(x)? as i64;
    let alpha = alpha(x)? as i64;
    let g = ordering::gamma_min(x, limits)?;
    let classic = deg - codim + 1;
    let weak = classic + alpha + g.gamma;
    Ok(EgReport {
        reg,
        deg,
        codim,
        alpha,
        gamma: g.gamma,
        weak_eg_bound: weak,
        classic_eg_bound: classic,
        weak_holds: reg <= weak,
        classic_holds: reg <= classic,
        witness_order: g.optimal_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SR_IDEAL: &str = "x1*x2*x3, x3*x4, x2*x5, x1*x4*x5, x1*x6, x2*x4*x6, x3*x5*x6";

    fn cx(facets: &[&str]) -> SimplicialComplex {
        let sets: Vec<Vec<String>> = facets.iter().map(|f| f.chars().map(|c| c.to_string()).collect()).collect();
        SimplicialComplex::from_label_sets(&sets).unwrap()
    }

    fn oct4_x() -> SimplicialComplex {
        let sets: Vec<Vec<String>> = ["124", "135", "236", "456"]
            .iter()
            .map(|f| f.chars().map(|c| format!("x{c}")).collect())
            .collect();
        SimplicialComplex::from_label_sets(&sets).unwrap()
    }

    #[test]
    fn parses_example_ideal() {
        let p = parse_ideal(SR_IDEAL).unwrap();
        assert_eq!(p.ideal.gens().len(), 7);
        assert_eq!(p.ideal.vars().len(), 6);
        assert!(p.warnings.is_empty());
        assert_eq!(p.ideal.to_string(), "x1*x2*x3, x1*x4*x5, x1*x6, x2*x4*x6, x2*x5, x3*x4, x3*x5*x6");
    }

    #[test]
    fn parse_errors() {
        let e = parse_ideal("x1*x1").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }), "{e}");
        assert!(e.to_string().contains("square-free"));
        assert!(matches!(parse_ideal("a*b,,c"), Err(Error::Parse { line: 1, column: 5, .. })));
        assert!(matches!(parse_ideal("a*b\nx^2*c"), Err(Error::Parse { line: 2, column: 1, .. })));
        assert!(matches!(parse_ideal("a**b"), Err(Error::Parse { .. })));
        assert!(matches!(parse_ideal("#vars a\na*b"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn drops_dominated_generators_with_warning() {
        let p = parse_ideal("a*b, a*b*c").unwrap();
        assert_eq!(p.ideal.gens().len(), 1);
        assert_eq!(p.ideal.to_string(), "a*b");
        assert_eq!(p.warnings.len(), 1);
    }

    #[test]
    fn whitespace_products_and_line_separators() {
        let p = parse_ideal("a b,\n c*d\n\n e f # tail comment").unwrap();
        assert_eq!(p.ideal.to_string(), "a*b, c*d, e*f");
    }

    #[test]
    fn correspondence_on_oct4() {
        let ideal = parse_ideal(SR_IDEAL).unwrap().ideal;
        let x = ideal_to_complex(&ideal).unwrap();
        assert_eq!(x, oct4_x());
        assert_eq!(complex_to_ideal(&x).unwrap(), ideal);
    }

    #[test]
    fn zero_ideal_and_simplices() {
        let p = parse_ideal("#vars a b c\n0").unwrap();
        assert!(p.ideal.is_zero());
        let x = ideal_to_complex(&p.ideal).unwrap();
        assert_eq!(x, cx(&["abc"]));
        assert!(complex_to_ideal(&cx(&["abc"])).unwrap().is_zero());
        assert_eq!(p.ideal.to_file_string(), "#vars a b c\n0\n");
    }

    #[test]
    fn degree_one_generators_shrink_universe() {
        let p = parse_ideal("a, b*c").unwrap();
        assert_eq!(degree_one_variables(&p.ideal), vec!["a".to_string()]);
        let x = ideal_to_complex(&p.ideal).unwrap();
        assert_eq!(x, cx(&["b", "c"]));
        let all = parse_ideal("a, b").unwrap();
        assert_eq!(ideal_to_complex(&all.ideal).unwrap(), SimplicialComplex::empty_face());
    }

    #[test]
    fn cone_points_lie_in_every_facet() {
        let p = parse_ideal("#vars a b c\na*b").unwrap();
        assert_eq!(ideal_to_complex(&p.ideal).unwrap(), cx(&["ac", "bc"]));
    }

    #[test]
    fn numerical_invariants() {
        let x = oct4_x();
        assert_eq!((degree(&x).unwrap(), codim(&x).unwrap(), alpha(&x).unwrap()), (4, 3, 0));
        assert_eq!(degree(&SimplicialComplex::empty_face()), Err(Error::EmptyFaceComplex));
        assert_eq!(alpha(&SimplicialComplex::void()), Err(Error::VoidComplex));
    }

    #[test]
    fn eg_report_oct4() {
        let r = eg_report(&oct4_x(), Limits::default()).unwrap();
        assert_eq!(r.reg, 3);
        assert_eq!(r.classic_eg_bound, 2);
        assert!(!r.classic_holds);
        assert_eq!((r.alpha, r.gamma, r.weak_eg_bound), (0, 3, 5));
        assert!(r.weak_holds);
        assert!(matches!(eg_report(&cx(&["abc"]), Limits::default()), Err(Error::Simplex(_))));
    }
}
