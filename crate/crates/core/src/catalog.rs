//! The universal elements of the motivic stable stems and which of their
//! commutation laws depend on the choice between `u = 1` and `u = eps`.

use serde::Serialize;

use crate::algebra::{Generator, Presentation};
use crate::conventions::error_factor;
use crate::units::{Bidegree, UnitExp};

/// Name, bidegree and provenance note of each built-in generator.
pub const UNIVERSAL: [(&str, Bidegree, &str); 7] = [
    ("rho", Bidegree::new(-1, -1), "universal"),
    ("eta", Bidegree::new(1, 1), "universal"),
    ("nu", Bidegree::new(3, 2), "universal"),
    ("sigma", Bidegree::new(7, 4), "universal"),
    ("eta_top", Bidegree::new(1, 0), "universal"),
    ("nu_top", Bidegree::new(3, 0), "universal"),
    ("sigma_top", Bidegree::new(7, 0), "universal"),
];

pub const TAU: (&str, Bidegree, &str) = ("tau", Bidegree::new(0, -1), "p-complete over C only");

/// Degree forced by the requirement that `tau0 tau = -tau tau0` in the
/// reference product.
pub const TAU0: (&str, Bidegree, &str) = (
    "tau0",
    Bidegree::new(1, 0),
    "dual Steenrod algebra; degree forced by the tau0*tau sign",
);

pub const RELATIONS: [&str; 3] = ["(1-eps)*rho", "(1-eps)*eta", "(1-eps)*eta^2"];

pub fn generators(include_tau: bool) -> Vec<Generator> {
    let extra: &[_] = if include_tau { &[TAU, TAU0] } else { &[] };
    UNIVERSAL
        .iter()
        .chain(extra)
        .map(|(name, degree, note)| Generator::new(name, *degree).with_note(note))
        .collect()
}

/// The seven universal generators (plus `tau`, `tau0` on request) with the
/// relations `(1-eps) rho = (1-eps) eta = (1-eps) eta^2 = 0`.
pub fn universal_presentation(include_tau: bool) -> Presentation {
    let name = if include_tau { "catalog-tau" } else { "catalog" };
    Presentation::new(generators(include_tau), &RELATIONS)
        .expect("built-in relations are valid")
        .with_name(name)
}

/// The same generators with no relations.
pub fn free_presentation(include_tau: bool) -> Presentation {
    let name = if include_tau { "free-tau" } else { "free" };
    Presentation::free(generators(include_tau))
        .expect("built-in generators are distinct")
        .with_name(name)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sensitivity {
    /// The two conventions give the same law outright.
    Insensitive,
    /// The laws differ by `eps`, but `(1 - eps)` kills one of the factors.
    Rescued,
    /// The laws differ and no relation absorbs the difference.
    Sensitive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SensitivityRow {
    pub x: String,
    pub y: String,
    pub factor: UnitExp,
    pub status: Sensitivity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rescued_by: Option<String>,
}

/// Error factor `eps^(a2 b1 + a1 b2)` for every unordered pair of distinct
/// generators, in declaration order.
pub fn sensitivity_table(pres: &Presentation) -> Vec<SensitivityRow> {
    let gens = pres.generators();
    let mut rows = Vec::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let factor = error_factor(gens[i].degree, gens[j].degree);
            let rescuer = [i, j]
                .into_iter()
                .find(|&g| pres.killed_by_one_minus_eps(g));
            let (status, rescued_by) = match (factor.is_one(), rescuer) {
                (true, _) => (Sensitivity::Insensitive, None),
                (false, Some(g)) => (Sensitivity::Rescued, Some(gens[g].name.clone())),
                (false, None) => (Sensitivity::Sensitive, None),
            };
            rows.push(SensitivityRow {
                x: gens[i].name.clone(),
                y: gens[j].name.clone(),
                factor,
                status,
                rescued_by,
            });
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::eval_expr;
    use crate::conventions::Convention;

    fn row<'a>(rows: &'a [SensitivityRow], a: &str, b: &str) -> &'a SensitivityRow {
        rows.iter()
            .find(|r| (r.x == a && r.y == b) || (r.x == b && r.y == a))
            .unwrap()
    }

    #[test]
    fn degrees() {
        let pres = universal_presentation(true);
        let deg = |n: &str| pres.degree_of(pres.lookup(n).unwrap());
        assert_eq!(deg("nu"), Bidegree::new(3, 2));
        assert_eq!(deg("sigma_top"), Bidegree::new(7, 0));
        assert_eq!(deg("tau"), Bidegree::new(0, -1));
        assert_eq!(deg("tau0"), Bidegree::new(1, 0));
        assert!(universal_presentation(false).lookup("tau").is_err());
    }

    #[test]
    fn one_minus_eps_kills_eta() {
        let pres = universal_presentation(false);
        let e = eval_expr(&"(1-eps)*eta".parse().unwrap(), &Convention::reference(), &pres).unwrap();
        assert!(e.is_zero());
    }

    #[test]
    fn sensitivity_examples() {
        let rows = sensitivity_table(&universal_presentation(false));
        assert_eq!(rows.len(), 21);
        let r = row(&rows, "nu_top", "sigma_top");
        assert_eq!((r.factor, r.status), (UnitExp::ONE, Sensitivity::Insensitive));
        let r = row(&rows, "rho", "nu");
        assert_eq!((r.factor, r.status), (UnitExp::EPS, Sensitivity::Rescued));
        assert_eq!(r.rescued_by.as_deref(), Some("rho"));

        let rows = sensitivity_table(&universal_presentation(true));
        let r = row(&rows, "tau", "nu");
        assert_eq!((r.factor, r.status), (UnitExp::EPS, Sensitivity::Sensitive));
    }

    #[test]
    fn nothing_is_rescued_without_relations() {
        let rows = sensitivity_table(&free_presentation(false));
        assert!(rows
            .iter()
            .all(|r| r.status != Sensitivity::Rescued));
        assert_eq!(
            rows.iter().filter(|r| r.status == Sensitivity::Sensitive).count(),
            10
        );
    }

    #[test]
    fn exported_json_reloads() {
        let pres = universal_presentation(true);
        let back = Presentation::from_json(&pres.to_json()).unwrap();
        assert_eq!(back.to_file(), pres.to_file());
    }
}
