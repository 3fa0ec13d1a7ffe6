//! Realization functors that collapse the bigrading, modelled by three
//! pieces of data: how degrees collapse, where `eps` goes, and the
//! multiplicativity defect of the functor against the reference product.
//!
//! A realization carries the `c`-twisted product to the target product
//! exactly when `sigma(defect(a, b) * twist_c(a, b)) = 1` for all `a, b`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::cocycles::{BilinearCocycle, Grid};
use crate::conventions::Convention;
use crate::error::{Error, Result};
use crate::units::{Bidegree, UnitExp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Collapse {
    /// `(p, q) -> p`
    Total,
    /// `(p, q) -> p - q`
    Fixed,
}

impl Collapse {
    pub fn apply(self, d: Bidegree) -> i64 {
        match self {
            Collapse::Total => d.p,
            Collapse::Fixed => d.p - d.q,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealizationModel {
    pub name: String,
    pub collapse: Collapse,
    /// Image of `eps`, either `1` or `-1`.
    pub sigma: i8,
    pub defect: BilinearCocycle,
}

pub const BUILTIN_MODELS: [&str; 3] = ["betti", "c2-underlying", "geometric-fixed"];

impl RealizationModel {
    /// `betti` and `c2-underlying` forget the weight, send `eps` to `-1` and
    /// see one `-1` per Tate circle moved past a simplicial circle.
    /// `geometric-fixed` keeps `p - q`, sends `eps` to `1` and has no defect;
    /// those last two are modelling assumptions, the simplest data giving the
    /// known ring-map outcomes for `u = -1` and `u = eps`.
    pub fn builtin(name: &str) -> Result<Self> {
        let topological = |name: &str| RealizationModel {
            name: name.to_string(),
            collapse: Collapse::Total,
            sigma: -1,
            defect: BilinearCocycle::alpha_u(UnitExp::MINUS_ONE),
        };
        match name {
            "betti" | "c2-underlying" => Ok(topological(name)),
            "geometric-fixed" => Ok(RealizationModel {
                name: name.to_string(),
                collapse: Collapse::Fixed,
                sigma: 1,
                defect: BilinearCocycle::TRIVIAL,
            }),
            _ => Err(Error::Unknown {
                what: "realization model",
                name: name.to_string(),
            }),
        }
    }

    pub fn sign(&self, u: UnitExp) -> i8 {
        u.sign_under(self.sigma)
    }

    pub fn builtins() -> Vec<RealizationModel> {
        BUILTIN_MODELS
            .iter()
            .map(|n| RealizationModel::builtin(n).expect("builtin"))
            .collect()
    }
}

impl FromStr for RealizationModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RealizationModel::builtin(s.trim())
    }
}

/// Outcome of a grid decision, with the first failing pair in search order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decision {
    pub witness: Option<(Bidegree, Bidegree)>,
}

impl Decision {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.witness {
            None => f.write_str("RING_HOM"),
            Some((a, b)) => write!(f, "NOT_RING_HOM witness a={a} b={b}"),
        }
    }
}

impl Serialize for Decision {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            ring_hom: bool,
            #[serde(skip_serializing_if = "Option::is_none")]
            witness: Option<Witness>,
        }
        #[derive(Serialize)]
        struct Witness {
            a: Bidegree,
            b: Bidegree,
        }
        Repr {
            ring_hom: self.holds(),
            witness: self.witness.map(|(a, b)| Witness { a, b }),
        }
        .serialize(serializer)
    }
}

/// Pairs of grid bidegrees, smallest first. Ties go to pairs whose left
/// factor carries weight and whose right factor carries stem, then to
/// positive entries before negative ones.
pub fn pairs_smallest_first(grid: Grid) -> Vec<(Bidegree, Bidegree)> {
    fn key(d: Bidegree) -> (i64, bool, i64, bool) {
        (d.p.abs(), d.p < 0, d.q.abs(), d.q < 0)
    }
    let mut pairs: Vec<_> = grid
        .points()
        .flat_map(|a| grid.points().map(move |b| (a, b)))
        .collect();
    pairs.sort_by_key(|&(a, b)| (a.l1() + b.l1(), a.p.abs() + b.q.abs(), key(a), key(b)));
    pairs
}

fn decide<F>(grid: Grid, ok: F) -> Decision
where
    F: Fn(Bidegree, Bidegree) -> bool,
{
    Decision {
        witness: pairs_smallest_first(grid)
            .into_iter()
            .find(|&(a, b)| !ok(a, b)),
    }
}

/// Whether the realization turns `._c` into the target product.
pub fn is_ring_hom(conv: &Convention, model: &RealizationModel, grid: Grid) -> Decision {
    decide(grid, |a, b| {
        model.sign(model.defect.eval(a, b) * conv.twist.eval(a, b)) == 1
    })
}

/// Whether the realized commutation law is the Koszul sign of the collapsed
/// degrees.
pub fn target_sign_compat(conv: &Convention, model: &RealizationModel, grid: Grid) -> Decision {
    decide(grid, |a, b| {
        let target = if (model.collapse.apply(a) * model.collapse.apply(b)).rem_euclid(2) == 0 {
            1
        } else {
            -1
        };
        model.sign(conv.commutation_unit(a, b)) == target
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DecisionRow {
    pub convention: String,
    pub model: String,
    pub decision: Decision,
}

pub fn decision_table(convs: &[Convention], models: &[RealizationModel], grid: Grid) -> Vec<DecisionRow> {
    convs
        .iter()
        .flat_map(|c| {
            models.iter().map(move |m| DecisionRow {
                convention: c.name.clone(),
                model: m.name.clone(),
                decision: is_ring_hom(c, m, grid),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(n: &str) -> RealizationModel {
        RealizationModel::builtin(n).unwrap()
    }

    const W: Option<(Bidegree, Bidegree)> = Some((Bidegree::new(0, 1), Bidegree::new(1, 0)));

    #[test]
    fn builtin_shapes() {
        let betti = model("betti");
        assert_eq!(betti.defect.eval(Bidegree::new(0, 1), Bidegree::new(1, 0)), UnitExp::MINUS_ONE);
        assert_eq!(betti.collapse.apply(Bidegree::new(3, 2)), 3);
        assert_eq!(model("c2-underlying").defect, betti.defect);
        let fixed = model("geometric-fixed");
        assert_eq!(fixed.defect, BilinearCocycle::TRIVIAL);
        assert_eq!(fixed.collapse.apply(Bidegree::new(3, 2)), 1);
        assert!(RealizationModel::builtin("etale").is_err());
        for m in RealizationModel::builtins() {
            assert_eq!(m.sign(UnitExp::MINUS_ONE), -1);
            assert!(crate::cocycles::satisfies_cocycle_identity(
                |a, b| m.defect.eval(a, b),
                Grid::symmetric(2)
            ));
        }
    }

    #[test]
    fn ring_hom_claims() {
        let g = Grid::default();
        let d = is_ring_hom(&Convention::reference(), &model("betti"), g);
        assert_eq!(d.witness, W);
        assert!(is_ring_hom(&Convention::epsilon(), &model("betti"), g).holds());
        assert!(is_ring_hom(&Convention::minus_one(), &model("betti"), g).holds());
        assert!(is_ring_hom(&Convention::epsilon(), &model("geometric-fixed"), g).holds());
        assert!(!is_ring_hom(&Convention::minus_one(), &model("geometric-fixed"), g).holds());
    }

    #[test]
    fn sign_compat_claims() {
        let g = Grid::default();
        assert!(target_sign_compat(&Convention::epsilon(), &model("geometric-fixed"), g).holds());
        assert!(target_sign_compat(&Convention::epsilon(), &model("betti"), g).holds());
        assert_eq!(
            target_sign_compat(&Convention::reference(), &model("betti"), g).witness,
            W
        );
    }

    #[test]
    fn witnesses_fail() {
        for conv in Convention::presets() {
            for m in RealizationModel::builtins() {
                if let Some((a, b)) = is_ring_hom(&conv, &m, Grid::default()).witness {
                    assert_eq!(m.sign(m.defect.eval(a, b) * conv.twist.eval(a, b)), -1);
                }
            }
        }
    }

    #[test]
    fn ring_hom_implies_sign_compat() {
        for conv in Convention::presets() {
            for m in RealizationModel::builtins() {
                if is_ring_hom(&conv, &m, Grid::default()).holds() {
                    assert!(target_sign_compat(&conv, &m, Grid::default()).holds(), "{} {}", conv, m.name);
                }
            }
        }
    }

    #[test]
    fn betti_depends_only_on_image_of_u() {
        let betti = model("betti");
        for u in UnitExp::ALL {
            let holds = is_ring_hom(&Convention::from_u(u), &betti, Grid::default()).holds();
            assert_eq!(holds, betti.sign(u) == -1, "{u}");
        }
    }

    #[test]
    fn table_is_stable_under_grid_growth() {
        let convs = Convention::presets();
        let models = RealizationModel::builtins();
        let small = decision_table(&convs, &models, Grid::symmetric(4));
        let large = decision_table(&convs, &models, Grid::symmetric(8));
        for (s, l) in small.iter().zip(&large) {
            assert_eq!(s.decision, l.decision);
        }
    }

    #[test]
    fn rendering() {
        let d = is_ring_hom(&Convention::reference(), &model("betti"), Grid::default());
        assert_eq!(d.to_string(), "NOT_RING_HOM witness a=(0,1) b=(1,0)");
        assert_eq!(
            serde_json::to_string(&d).unwrap(),
            r#"{"ring_hom":false,"witness":{"a":[0,1],"b":[1,0]}}"#
        );
    }
}
