//! Canonical `key: value` reports.
//!
//! Every section is a list of lines in a fixed order and every rational is
//! printed as an integer or `p/q`, so the same input always produces the
//! same bytes.

use std::fmt;
use std::ops::RangeInclusive;

use num_traits::Zero;

use crate::error::Result;
use crate::exactlin::{format_vec, Subspace};
use crate::format::{aligned_ranges, format_ranges, ranges_to_layers};
use crate::grading::{
    homogeneous_dimension, is_stratifiable, nilpotentisation, verify_stratification, Stratification,
    StratifiabilityVerdict,
};
use crate::liealg::{center, jacobi_defect, lower_central_series, LieAlgebra, LinearEndo, SeriesReport};
use crate::tanaka::{degree_zero_derivations, prolong, ultrarigidity_check, DEFAULT_MAX_DEGREE};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn push(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.entries.push((key.into(), value.to_string()));
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k}: {v}")?;
        }
        Ok(())
    }
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

/// Sparse rendering `(row,col)=value` with 1-based indices.
pub fn format_endo(u: &LinearEndo) -> String {
    let m = u.matrix();
    let mut parts = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let x = m.get(r, c);
            if !x.is_zero() {
                parts.push(format!("({},{})={}", r + 1, c + 1, x));
            }
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

/// Where the stratification used by the graded sections came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StratificationSource {
    Declared,
    Derived,
}

impl fmt::Display for StratificationSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StratificationSource::Declared => "declared",
            StratificationSource::Derived => "derived",
        })
    }
}

pub fn jacobi_section(l: &LieAlgebra) -> (Report, bool) {
    let mut r = Report::default();
    let defects = jacobi_defect(l);
    r.push("dim", l.dim());
    r.push("brackets", l.table().len());
    if defects.is_empty() {
        r.push("jacobi", "ok");
    } else {
        r.push("jacobi", format!("failed ({} triples)", defects.len()));
        for d in &defects {
            r.push(
                format!("jacobi_violation[{},{},{}]", d.i + 1, d.j + 1, d.k + 1),
                format_vec(&d.residual),
            );
        }
    }
    (r, defects.is_empty())
}

pub fn series_section(l: &LieAlgebra) -> Result<(Report, SeriesReport)> {
    let s = lower_central_series(l)?;
    let mut r = Report::default();
    r.push("series_dims", join(&s.dims()));
    r.push("nilpotent", yes_no(s.nilpotent));
    r.push("step", s.step.map_or("none".to_string(), |x| x.to_string()));
    r.push("center_dim", center(l).dim());
    Ok((r, s))
}

pub fn stratifiable_section(v: &StratifiabilityVerdict) -> Report {
    let mut r = Report::default();
    r.push("stratifiable", yes_no(v.stratifiable));
    if let Some(w) = &v.witness {
        r.push("stratifiable_witness", format_endo(w));
    }
    if let Some(s) = &v.derived_stratification {
        r.push("derived_layer_dims", join(&s.layer_dims()));
    }
    r
}

pub fn layers_section(s: &Stratification, source: StratificationSource) -> Report {
    let mut r = Report::default();
    r.push("stratification", source);
    r.push("layer_dims", join(&s.layer_dims()));
    match aligned_ranges(s) {
        Some(ranges) => r.push("layers", format_ranges(&ranges)),
        None => {
            for (j, v) in s.layers().iter().enumerate() {
                let vecs: Vec<String> = v.basis_vectors().iter().map(|x| format_vec(x)).collect();
                r.push(format!("layer_{}", j + 1), vecs.join(" "));
            }
        }
    }
    r.push("homogeneous_dimension", homogeneous_dimension(s));
    r
}

pub fn g0_section(l: &LieAlgebra, s: &Stratification) -> Result<Report> {
    let g0 = degree_zero_derivations(l, s)?;
    let n = l.dim();
    let mut r = Report::default();
    r.push("g0_dim", g0.dim());
    for (i, b) in g0.basis_vectors().into_iter().enumerate() {
        r.push(format!("g0_basis[{}]", i + 1), format_endo(&LinearEndo::from_flat(n, b)?));
    }
    Ok(r)
}

pub fn prolong_section(l: &LieAlgebra, s: &Stratification, max_degree: usize) -> Result<Report> {
    let p = prolong(l, s, max_degree)?;
    let mut r = Report::default();
    r.push("prolongation_max_degree", max_degree);
    r.push("prolongation_dims", join(&p.dims()));
    r.push("prolongation", p.finite.as_str());
    r.push("prolongation_total_dim", p.total_dim());
    Ok(r)
}

pub fn rigid_section(l: &LieAlgebra, s: &Stratification) -> Result<(Report, bool)> {
    let v = ultrarigidity_check(l, s)?;
    let mut r = Report::default();
    r.push("g0_dim", v.g0_dim);
    r.push("ultrarigid", yes_no(v.infinitesimally_ultrarigid));
    r.push(
        "g1_vanishes",
        v.lemma_prodim1_confirmed.map_or("n/a", yes_no),
    );
    Ok((r, v.infinitesimally_ultrarigid))
}

/// Emits the associated graded algebra for the horizontal subspace spanned
/// by the given coordinate range.
pub fn gr_text(l: &LieAlgebra, horizontal: &RangeInclusive<usize>) -> Result<String> {
    let h = Subspace::coordinate(l.dim(), (*horizontal.start() - 1)..*horizontal.end());
    let gr = nilpotentisation(l, &h)?;
    let ranges = aligned_ranges(&gr.stratification);
    let basis: Vec<String> = (0..gr.adapted_basis.cols())
        .map(|c| format_vec(&gr.adapted_basis.column(c)))
        .collect();
    let header = format!("associated graded algebra\nadapted basis: {}", basis.join(" "));
    Ok(crate::format::emit(&gr.algebra, ranges.as_deref(), Some(&header)))
}

/// Picks the declared stratification when it validates, otherwise the one
/// derived from the stratifiability witness.
pub fn resolve_stratification(
    l: &LieAlgebra,
    declared: Option<&[RangeInclusive<usize>]>,
) -> Result<Option<(Stratification, StratificationSource)>> {
    if let Some(ranges) = declared {
        let s = verify_stratification(l, &ranges_to_layers(l.dim(), ranges))?;
        return Ok(Some((s, StratificationSource::Declared)));
    }
    let v = is_stratifiable(l)?;
    Ok(v.derived_stratification.map(|s| (s, StratificationSource::Derived)))
}

#[derive(Debug, Clone, Copy)]
pub struct ReportOptions {
    pub max_degree: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            max_degree: DEFAULT_MAX_DEGREE,
        }
    }
}

/// Full report: Jacobi status, series, stratifiability, layers, `g_0`,
/// prolongation and rigidity. Later sections are omitted when an earlier
/// property fails (not a Lie algebra, not nilpotent, no stratification).
pub fn full_report(
    name: &str,
    l: &LieAlgebra,
    declared: Option<&[RangeInclusive<usize>]>,
    opts: ReportOptions,
) -> Result<Report> {
    let mut r = Report::default();
    r.push("name", name);
    let (jac, ok) = jacobi_section(l);
    r.extend(jac);
    if !ok {
        return Ok(r);
    }
    let (ser, series) = series_section(l)?;
    r.extend(ser);
    if !series.nilpotent {
        return Ok(r);
    }
    let verdict = is_stratifiable(l)?;
    r.extend(stratifiable_section(&verdict));
    let strat = match declared {
        Some(ranges) => Some((
            verify_stratification(l, &ranges_to_layers(l.dim(), ranges))?,
            StratificationSource::Declared,
        )),
        None => verdict
            .derived_stratification
            .map(|s| (s, StratificationSource::Derived)),
    };
    let Some((s, source)) = strat else {
        r.push("stratification", "none");
        return Ok(r);
    };
    r.extend(layers_section(&s, source));
    r.extend(g0_section(l, &s)?);
    r.extend(prolong_section(l, &s, opts.max_degree)?);
    let (rigid, _) = rigid_section(l, &s)?;
    for (k, v) in rigid.entries {
        if k != "g0_dim" {
            r.push(k, v);
        }
    }
    Ok(r)
}
