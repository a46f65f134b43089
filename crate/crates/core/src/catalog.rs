//! Built-in algebras with their declared layers and expected invariants.

use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::exactlin::{unit_vec, Rational};
use crate::format;
use crate::liealg::LieAlgebra;

const EXAMPLE1_TABLE: &str = include_str!("../data/example1_16.alg");

/// Invariants an entry is expected to have; `None` where nothing is
/// asserted in advance.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Expected {
    pub step: Option<usize>,
    pub layer_dims: Option<Vec<usize>>,
    pub g0_dim: Option<usize>,
    pub ultrarigid: Option<bool>,
    pub stratifiable: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub algebra: LieAlgebra,
    pub declared_layers: Option<Vec<RangeInclusive<usize>>>,
    pub expected: Expected,
    pub provenance: String,
}

impl CatalogEntry {
    /// The entry in the text file format.
    pub fn emit(&self) -> String {
        let header = format!("{}: {}\n{}", self.name, self.description, self.provenance);
        format::emit(&self.algebra, self.declared_layers.as_deref(), Some(&header))
    }
}

/// Names accepted by [`get`], in listing order. Parametric families are
/// listed with representative parameters; any `n >= 1` is accepted.
const LISTED: &[&str] = &[
    "example1_16",
    "example2_17",
    "deformed_h_16",
    "heisenberg_3",
    "heisenberg_2n1(2)",
    "abelian(2)",
    "abelian(4)",
    "free_step2_rank3",
];

/// `(name, one-line description)` for every listed entry, in a fixed order.
pub fn list() -> Vec<(String, String)> {
    LISTED
        .iter()
        .map(|n| {
            let e = get(n).expect("listed names resolve");
            (e.name, e.description)
        })
        .collect()
}

/// Adds one bracket `[e_a, e_b] = e_t` (1-based) to a table, enlarging the
/// dimension to `dim` first.
fn extend(base: &LieAlgebra, dim: usize, a: usize, b: usize, t: usize) -> Result<LieAlgebra> {
    let pad = |v: &Vec<Rational>| {
        let mut w = v.clone();
        w.resize(dim, Rational::default());
        w
    };
    let mut entries: Vec<(usize, usize, Vec<Rational>)> =
        base.table().iter().map(|(&(i, j), v)| (i, j, pad(v))).collect();
    entries.push((a - 1, b - 1, unit_vec(dim, t - 1)));
    LieAlgebra::new(dim, entries)
}

fn example1() -> Result<(LieAlgebra, Vec<RangeInclusive<usize>>)> {
    let f = format::parse(EXAMPLE1_TABLE)?;
    let layers = f.layers.clone().expect("data file declares layers");
    Ok((f.algebra.validated()?, layers))
}

fn parameter(name: &str, family: &str) -> Option<std::result::Result<usize, ()>> {
    let inner = name.strip_prefix(family)?.strip_prefix('(')?.strip_suffix(')')?;
    Some(inner.trim().parse::<usize>().map_err(|_| ()).and_then(|n| if n >= 1 { Ok(n) } else { Err(()) }))
}

pub fn get(name: &str) -> Result<CatalogEntry> {
    let unknown = || Error::UnknownCatalogEntry(name.to_string());
    match name {
        "example1_16" => {
            let (algebra, layers) = example1()?;
            Ok(CatalogEntry {
                name: name.into(),
                description: "16-dim 2-step ultrarigid Carnot algebra (26 brackets)".into(),
                algebra,
                declared_layers: Some(layers),
                expected: Expected {
                    step: Some(2),
                    layer_dims: Some(vec![10, 6]),
                    g0_dim: Some(1),
                    ultrarigid: Some(true),
                    stratifiable: Some(true),
                },
                provenance: "Examples of ultrarigid groups, first example".into(),
            })
        }
        "example2_17" => {
            let (base, _) = example1()?;
            Ok(CatalogEntry {
                name: name.into(),
                description: "example1_16 extended by [e1,e11] = e17; 3-step ultrarigid".into(),
                algebra: extend(&base, 17, 1, 11, 17)?,
                declared_layers: Some(vec![1..=10, 11..=16, 17..=17]),
                expected: Expected {
                    step: Some(3),
                    layer_dims: Some(vec![10, 6, 1]),
                    g0_dim: Some(1),
                    ultrarigid: Some(true),
                    stratifiable: Some(true),
                },
                provenance: "Examples of ultrarigid groups, second example (extends the 16-dim g)".into(),
            })
        }
        "deformed_h_16" => {
            let (base, _) = example1()?;
            Ok(CatalogEntry {
                name: name.into(),
                description: "example1_16 deformed by [e1,e11] = e14; nilpotent, not stratifiable".into(),
                algebra: extend(&base, 16, 1, 11, 14)?,
                declared_layers: None,
                expected: Expected {
                    step: Some(3),
                    stratifiable: Some(false),
                    ..Default::default()
                },
                provenance: "Example of a non-Carnot group with ultrarigid tangent".into(),
            })
        }
        "heisenberg_3" => heisenberg(name, 1),
        "free_step2_rank3" => {
            let algebra = LieAlgebra::from_integer_table(
                6,
                &[(1, 2, &[(1, 4)]), (1, 3, &[(1, 5)]), (2, 3, &[(1, 6)])],
            )?;
            Ok(CatalogEntry {
                name: name.into(),
                description: "free 2-step nilpotent algebra on 3 generators".into(),
                algebra,
                declared_layers: Some(vec![1..=3, 4..=6]),
                expected: Expected {
                    step: Some(2),
                    layer_dims: Some(vec![3, 3]),
                    ultrarigid: Some(false),
                    stratifiable: Some(true),
                    ..Default::default()
                },
                provenance: "control: free nilpotent, large strata-preserving derivation algebra".into(),
            })
        }
        _ => {
            if let Some(n) = parameter(name, "heisenberg_2n1") {
                return heisenberg(name, n.map_err(|_| unknown())?);
            }
            if let Some(n) = parameter(name, "abelian") {
                let n = n.map_err(|_| unknown())?;
                return Ok(CatalogEntry {
                    name: name.into(),
                    description: format!("abelian algebra of dimension {n}"),
                    algebra: LieAlgebra::abelian(n),
                    declared_layers: (n >= 2).then(|| vec![1..=n]),
                    expected: Expected {
                        step: Some(1),
                        layer_dims: (n >= 2).then(|| vec![n]),
                        g0_dim: (n >= 2).then_some(n * n),
                        ultrarigid: (n >= 2).then_some(false),
                        stratifiable: Some(true),
                    },
                    provenance: "control: abelian, infinite prolongation".into(),
                });
            }
            Err(unknown())
        }
    }
}

/// `[e_i, e_{n+i}] = e_{2n+1}`; strata-preserving derivations form the
/// conformal symplectic algebra, of dimension `n(2n+1) + 1`.
fn heisenberg(name: &str, n: usize) -> Result<CatalogEntry> {
    let dim = 2 * n + 1;
    let entries = (0..n).map(|i| (i, n + i, unit_vec(dim, dim - 1)));
    Ok(CatalogEntry {
        name: name.into(),
        description: format!("Heisenberg algebra of dimension {dim}"),
        algebra: LieAlgebra::new(dim, entries)?,
        declared_layers: Some(vec![1..=2 * n, dim..=dim]),
        expected: Expected {
            step: Some(2),
            layer_dims: Some(vec![2 * n, 1]),
            g0_dim: Some(n * (2 * n + 1) + 1),
            ultrarigid: Some(false),
            stratifiable: Some(true),
        },
        provenance: "control: contact algebra, infinite prolongation".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::q;
    use crate::liealg::jacobi_defect;

    #[test]
    fn example1_has_the_published_brackets() {
        let e = get("example1_16").unwrap();
        assert_eq!(e.algebra.table().len(), 26);
        assert_eq!(e.algebra.bracket_basis(8, 9)[11], q(-1));
        assert_eq!(e.algebra.bracket_basis(0, 1)[10], q(1));
    }

    #[test]
    fn extensions_add_exactly_one_bracket() {
        let g2 = get("example2_17").unwrap();
        assert_eq!(g2.algebra.dim(), 17);
        assert_eq!(g2.algebra.table().len(), 27);
        assert_eq!(g2.algebra.bracket_basis(0, 10), unit_vec(17, 16));
        let h = get("deformed_h_16").unwrap();
        assert_eq!(h.algebra.table().len(), 27);
        assert_eq!(h.algebra.bracket_basis(0, 10), unit_vec(16, 13));
    }

    #[test]
    fn parametric_names() {
        assert_eq!(get("abelian(4)").unwrap().algebra.dim(), 4);
        assert!(get("abelian(4)").unwrap().algebra.table().is_empty());
        assert_eq!(get("heisenberg_2n1(1)").unwrap().algebra, get("heisenberg_3").unwrap().algebra);
        assert_eq!(get("heisenberg_2n1(3)").unwrap().algebra.dim(), 7);
        for bad in ["abelian(0)", "abelian(x)", "heisenberg_2n1()", "nope", "abelian"] {
            assert!(matches!(get(bad), Err(Error::UnknownCatalogEntry(_))), "{bad}");
        }
    }

    #[test]
    fn listing_is_stable_and_resolvable() {
        let a = list();
        assert_eq!(a, list());
        assert!(a.iter().any(|(n, _)| n == "example1_16"));
        for (n, _) in &a {
            let e = get(n).unwrap();
            assert_eq!(&e.name, n);
            assert!(jacobi_defect(&e.algebra).is_empty());
        }
    }
}
