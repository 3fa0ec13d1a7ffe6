//! Multiplication conventions: a twist cocycle applied on top of the
//! reference product, together with the coefficient mode the answers are
//! read in.
//!
//! The reference product commutes by
//! `kappa(a, b) = (-1)^((a1-a2)(b1-b2)) eps^(a2 b2)`; twisting by `alpha`
//! changes this to `w(a, b) = kappa(a, b) alpha(a, b)^-1 alpha(b, a)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cocycles::BilinearCocycle;
use crate::error::{Error, Result};
use crate::units::{Bidegree, CoefMode, UnitExp};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Convention {
    pub name: String,
    pub twist: BilinearCocycle,
    pub mode: CoefMode,
}

/// Preset names and the unit `u` each one twists by.
pub const PRESETS: [(&str, UnitExp); 6] = [
    ("reference", UnitExp::ONE),
    ("deligne", UnitExp::ONE),
    ("minus-one", UnitExp::MINUS_ONE),
    ("epsilon", UnitExp::EPS),
    ("bernstein", UnitExp::EPS),
    ("minus-epsilon", UnitExp::MINUS_EPS),
];

impl Convention {
    pub fn new(name: impl Into<String>, twist: BilinearCocycle, mode: CoefMode) -> Self {
        Convention {
            name: name.into(),
            twist,
            mode,
        }
    }

    /// The `u`-twisted product, `x ._u y = x . y . u^(a2 (b1 - b2))`.
    pub fn from_u(u: UnitExp) -> Self {
        let name = PRESETS
            .iter()
            .find(|(_, v)| *v == u)
            .map(|(n, _)| n.to_string())
            .expect("every unit has a preset");
        Convention::new(name, BilinearCocycle::alpha_u(u), CoefMode::GENERIC)
    }

    pub fn reference() -> Self {
        Convention::from_u(UnitExp::ONE)
    }

    pub fn epsilon() -> Self {
        Convention::from_u(UnitExp::EPS)
    }

    pub fn minus_one() -> Self {
        Convention::from_u(UnitExp::MINUS_ONE)
    }

    pub fn minus_epsilon() -> Self {
        Convention::from_u(UnitExp::MINUS_EPS)
    }

    /// The four `u`-twists, in the order `1, -1, eps, -eps`.
    pub fn presets() -> [Convention; 4] {
        UnitExp::ALL.map(Convention::from_u)
    }

    pub fn preset(name: &str) -> Result<Self> {
        let (canonical, u) = PRESETS
            .iter()
            .find(|(n, _)| *n == name)
            .ok_or_else(|| Error::Unknown {
                what: "convention",
                name: name.to_string(),
            })?;
        Ok(Convention::new(
            *canonical,
            BilinearCocycle::alpha_u(*u),
            CoefMode::GENERIC,
        ))
    }

    pub fn with_mode(mut self, mode: CoefMode) -> Self {
        self.mode = mode;
        self
    }

    /// The unit `u` when the twist is one of the `alpha_u`.
    pub fn twist_unit(&self) -> Option<UnitExp> {
        UnitExp::ALL
            .into_iter()
            .find(|&u| BilinearCocycle::alpha_u(u) == self.twist)
    }

    /// `w(a, b)` before any specialization.
    pub fn symbolic_commutation_unit(&self, a: Bidegree, b: Bidegree) -> UnitExp {
        base_kappa(a, b) * self.twist.eval(a, b).inv() * self.twist.eval(b, a)
    }

    /// The unit with `x . y = w(a, b) y . x` for `x` in degree `a`, `y` in
    /// degree `b`, read in this convention's coefficient mode.
    pub fn commutation_unit(&self, a: Bidegree, b: Bidegree) -> UnitExp {
        self.mode.specialize_unit(self.symbolic_commutation_unit(a, b))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ConventionFile = serde_json::from_str(text)?;
        file.resolve()
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if !self.mode.is_generic() {
            write!(f, " [{}]", self.mode)?;
        }
        Ok(())
    }
}

impl FromStr for Convention {
    type Err = Error;

    /// A preset name or `u=<unit>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.strip_prefix("u=") {
            Some(unit) => Ok(Convention::from_u(unit.parse()?)),
            None => Convention::preset(s),
        }
    }
}

/// On-disk form: either `u` or an explicit `twist`, plus an optional mode.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConventionFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<UnitExp>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<BilinearCocycle>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<CoefMode>,
}

impl ConventionFile {
    pub fn resolve(self) -> Result<Convention> {
        let (twist, default_name) = match (self.u, self.twist) {
            (Some(u), None) => (BilinearCocycle::alpha_u(u), Convention::from_u(u).name),
            (None, Some(t)) => (t, "custom".to_string()),
            _ => {
                return Err(Error::Parse {
                    what: "convention",
                    input: format!("{self:?}"),
                    reason: "give exactly one of \"u\" and \"twist\"".into(),
                })
            }
        };
        Ok(Convention::new(
            self.name.unwrap_or(default_name),
            twist,
            self.mode.unwrap_or_default(),
        ))
    }
}

/// `(-1)^((a1-a2)(b1-b2)) eps^(a2 b2)`: the commutation law of the reference
/// product, where simplicial circles anticommute, Tate circles commute up to
/// `eps`, and the two kinds pass each other freely.
pub fn base_kappa(a: Bidegree, b: Bidegree) -> UnitExp {
    UnitExp::MINUS_ONE.pow2(a.p - a.q, b.p - b.q) * UnitExp::EPS.pow2(a.q, b.q)
}

/// `eps^(a2 b1 + a1 b2)`, the ratio of the `eps`-twisted and reference
/// commutation laws.
pub fn error_factor(a: Bidegree, b: Bidegree) -> UnitExp {
    UnitExp::EPS.pow2(a.q, b.p) * UnitExp::EPS.pow2(a.p, b.q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TwistRatio {
    pub ratio: BilinearCocycle,
    /// Whether the two products are related by a standard isomorphism.
    pub is_coboundary: bool,
}

/// `to.twist / from.twist`, and whether that ratio is a coboundary.
pub fn twist_ratio(from: &Convention, to: &Convention) -> Result<TwistRatio> {
    if from.mode != to.mode {
        return Err(Error::ModeMismatch {
            left: from.mode.to_string(),
            right: to.mode.to_string(),
        });
    }
    let ratio = from.twist.inv() * to.twist;
    Ok(TwistRatio {
        ratio,
        is_coboundary: ratio.is_coboundary(),
    })
}

/// A super degree `a + b sigma` as a bidegree: `b` Tate circles and `a`
/// simplicial ones.
pub fn from_super_degree(a: i64, b: i64) -> Bidegree {
    Bidegree::new(a + b, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycles::{satisfies_cocycle_identity, Grid};
    use crate::units::EpsImage;

    const ONE: UnitExp = UnitExp::ONE;
    const M1: UnitExp = UnitExp::MINUS_ONE;
    const EPS: UnitExp = UnitExp::EPS;
    const MEPS: UnitExp = UnitExp::MINUS_EPS;

    fn d(p: i64, q: i64) -> Bidegree {
        Bidegree::new(p, q)
    }

    const TAU: Bidegree = Bidegree::new(0, -1);
    const NU: Bidegree = Bidegree::new(3, 2);

    fn minus_mode() -> CoefMode {
        CoefMode::new(EpsImage::MinusOne, 0)
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(base_kappa(d(1, 1), d(1, 1)), EPS);
        assert_eq!(base_kappa(d(1, 0), d(0, -1)), M1);
        for b in Grid::symmetric(3).points() {
            assert_eq!(base_kappa(Bidegree::ZERO, b), ONE);
        }
    }

    #[test]
    fn tau_nu_signs() {
        assert_eq!(Convention::reference().commutation_unit(TAU, NU), M1);
        assert_eq!(Convention::epsilon().commutation_unit(TAU, NU), MEPS);
    }

    #[test]
    fn specialized_laws_are_total_degree_signs() {
        for conv in [Convention::minus_one(), Convention::epsilon()] {
            let conv = conv.with_mode(minus_mode());
            for a in Grid::symmetric(3).points() {
                for b in Grid::symmetric(3).points() {
                    assert_eq!(conv.commutation_unit(a, b), M1.pow2(a.p, b.p));
                }
            }
        }
    }

    #[test]
    fn epsilon_law_closed_form() {
        let conv = Convention::epsilon();
        for a in Grid::symmetric(3).points() {
            for b in Grid::symmetric(3).points() {
                let expected =
                    M1.pow2(a.p, b.p) * MEPS.pow(a.q * b.p + a.p * b.q + a.q * b.q);
                assert_eq!(conv.commutation_unit(a, b), expected);
                // second closed form: (-eps)^((a1-a2)(b1-b2)) eps^(a1 b1)
                let alt = MEPS.pow2(a.p - a.q, b.p - b.q) * EPS.pow2(a.p, b.p);
                assert_eq!(expected, alt);
            }
        }
    }

    #[test]
    fn commutation_units_are_skew_and_cocycles() {
        let mut convs = Convention::presets().to_vec();
        convs.push(Convention::new(
            "odd",
            BilinearCocycle::new(M1, EPS, ONE, MEPS),
            CoefMode::GENERIC,
        ));
        for conv in &convs {
            for a in Grid::symmetric(4).points() {
                for b in Grid::symmetric(4).points() {
                    let w = conv.commutation_unit(a, b) * conv.commutation_unit(b, a);
                    assert!(w.is_one(), "{conv} {a} {b}");
                }
            }
            assert!(satisfies_cocycle_identity(
                |a, b| conv.commutation_unit(a, b),
                Grid::symmetric(2)
            ));
        }
    }

    #[test]
    fn reference_law_is_kappa() {
        let conv = Convention::reference();
        for a in Grid::symmetric(4).points() {
            for b in Grid::symmetric(4).points() {
                assert_eq!(conv.commutation_unit(a, b), base_kappa(a, b));
            }
        }
    }

    #[test]
    fn error_factor_is_ratio_of_laws() {
        let (e, r) = (Convention::epsilon(), Convention::reference());
        for a in Grid::symmetric(4).points() {
            for b in Grid::symmetric(4).points() {
                assert_eq!(
                    error_factor(a, b),
                    e.commutation_unit(a, b) * r.commutation_unit(a, b).inv()
                );
            }
        }
        assert_eq!(error_factor(d(-1, -1), NU), EPS);
        assert_eq!(error_factor(d(3, 0), d(7, 0)), ONE);
        assert_eq!(error_factor(d(1, 1), d(1, 1)), ONE);
    }

    #[test]
    fn twist_ratios() {
        let r = twist_ratio(&Convention::reference(), &Convention::epsilon()).unwrap();
        assert_eq!(r.ratio, BilinearCocycle::alpha_u(EPS));
        assert!(!r.is_coboundary);

        let r = twist_ratio(&Convention::epsilon(), &Convention::epsilon()).unwrap();
        assert_eq!(r.ratio, BilinearCocycle::TRIVIAL);
        assert!(r.is_coboundary);

        let r = twist_ratio(&Convention::minus_one(), &Convention::minus_epsilon()).unwrap();
        assert_eq!(r.ratio, BilinearCocycle::new(ONE, ONE, EPS, EPS));
        assert_eq!(r.ratio.antisymmetrization(), EPS);
        assert!(!r.is_coboundary);

        let err = twist_ratio(
            &Convention::reference(),
            &Convention::epsilon().with_mode(minus_mode()),
        );
        assert!(matches!(err, Err(Error::ModeMismatch { .. })));
    }

    #[test]
    fn parsing_presets() {
        assert_eq!("u=1".parse::<Convention>().unwrap().name, "reference");
        assert_eq!("u=-eps".parse::<Convention>().unwrap().name, "minus-epsilon");
        assert_eq!(
            "bernstein".parse::<Convention>().unwrap().twist,
            BilinearCocycle::alpha_u(EPS)
        );
        assert_eq!("deligne".parse::<Convention>().unwrap().twist, BilinearCocycle::TRIVIAL);
        assert!("u=2".parse::<Convention>().is_err());
        assert!("voevodsky".parse::<Convention>().is_err());
    }

    #[test]
    fn convention_files() {
        let c = Convention::from_json(
            r#"{"name": "v", "u": "-1", "mode": {"eps": "-1", "modulus": 0}}"#,
        )
        .unwrap();
        assert_eq!(c.twist, BilinearCocycle::alpha_u(M1));
        assert_eq!(c.mode, minus_mode());
        let c = Convention::from_json(
            r#"{"twist": {"m11": "1", "m12": "-1", "m21": "1", "m22": "1"}}"#,
        )
        .unwrap();
        assert_eq!(c.name, "custom");
        assert!(c.mode.is_generic());
        assert!(Convention::from_json(r#"{"name": "x"}"#).is_err());
        assert!(Convention::from_json(r#"{"u": "1", "colour": 3}"#).is_err());
    }

    #[test]
    fn super_conventions() {
        let deligne = Convention::preset("deligne").unwrap();
        let bernstein = Convention::preset("bernstein").unwrap();
        for a in -3..=3 {
            for b in -3..=3 {
                for c in -3..=3 {
                    for dd in -3..=3 {
                        let (x, y) = (from_super_degree(a, b), from_super_degree(c, dd));
                        assert_eq!(
                            deligne.commutation_unit(x, y),
                            M1.pow2(a, c) * EPS.pow2(b, dd)
                        );
                        assert_eq!(
                            bernstein.commutation_unit(x, y),
                            M1.pow2(a, c) * EPS.pow(a * dd + b * c + b * dd)
                        );
                    }
                }
            }
        }
    }
}
