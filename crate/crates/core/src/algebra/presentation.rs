use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::expr::ProductExpr;
use super::{eval_generic, Element, Monomial};
use crate::conventions::{base_kappa, Convention};
use crate::error::{Error, Result};
use crate::units::{Bidegree, Coef, UnitExp};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: Bidegree,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Generator {
    pub fn new(name: &str, degree: Bidegree) -> Self {
        Generator {
            name: name.to_string(),
            degree,
            note: None,
        }
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.note = Some(note.to_string());
        self
    }
}

/// `unit * lead + tail = 0`, used left to right as `lead -> -unit^-1 tail`.
#[derive(Clone, Debug)]
pub(crate) struct RewriteRule {
    pub lead: Monomial,
    pub unit: UnitExp,
    pub tail: Vec<(Monomial, Coef)>,
}

/// `coef * monomial = 0` with `coef` a zero divisor such as `1 - eps`.
#[derive(Clone, Debug)]
pub(crate) struct Annihilator {
    pub monomial: Monomial,
    pub coef: Coef,
}

/// An ideal of `Z[eps]/(eps^2 - 1)`, stored as a Hermite basis of the
/// corresponding lattice in coordinates `(b, a)` for `a + b eps`. Reducing
/// against it eliminates the `eps` component first, so the canonical
/// representative of a class is as close to an integer as the ideal allows.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoefIdeal {
    pivot: Option<(BigInt, BigInt)>,
    tail: BigInt,
}

impl CoefIdeal {
    pub fn generated_by<'a>(gens: impl IntoIterator<Item = &'a Coef>) -> Self {
        let mut pivot: Option<(BigInt, BigInt)> = None;
        let mut tail = BigInt::zero();
        let vectors = gens
            .into_iter()
            .flat_map(|g| [(g.b.clone(), g.a.clone()), (g.a.clone(), g.b.clone())]);
        for (x, y) in vectors {
            if x.is_zero() {
                tail = tail.gcd(&y);
                continue;
            }
            match pivot.take() {
                None => pivot = Some((x, y)),
                Some((px, py)) => {
                    let e = px.extended_gcd(&x);
                    let g = e.gcd;
                    let new_pivot = (g.clone(), &e.x * &py + &e.y * &y);
                    let rest = &(&x / &g) * &py - &(&px / &g) * &y;
                    tail = tail.gcd(&rest);
                    pivot = Some(new_pivot);
                }
            }
        }
        if let Some((px, py)) = pivot.as_mut() {
            if px.is_negative() {
                *px = -px.clone();
                *py = -py.clone();
            }
            if !tail.is_zero() {
                *py = py.mod_floor(&tail);
            }
        }
        CoefIdeal { pivot, tail }
    }

    pub fn is_zero(&self) -> bool {
        self.pivot.is_none() && self.tail.is_zero()
    }

    /// Canonical representative of `c` modulo the ideal.
    pub fn reduce(&self, c: &Coef) -> Coef {
        let (mut x, mut y) = (c.b.clone(), c.a.clone());
        if let Some((px, py)) = &self.pivot {
            let k = x.div_floor(px);
            x -= &k * px;
            y -= &k * py;
        }
        if !self.tail.is_zero() {
            y = y.mod_floor(&self.tail);
        }
        Coef { a: y, b: x }
    }

    pub fn contains(&self, c: &Coef) -> bool {
        self.reduce(c).is_zero()
    }
}

/// Serialized form shared by user presentations and the built-in catalog.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub generators: Vec<Generator>,
    #[serde(default)]
    pub relations: Vec<String>,
}

/// Generators in their canonical (declaration) order, plus relations split
/// into unit-leading rewrite rules and annihilator relations.
#[derive(Clone, Debug)]
pub struct Presentation {
    name: Option<String>,
    generators: Vec<Generator>,
    index: HashMap<String, usize>,
    relation_sources: Vec<String>,
    pub(crate) rules: Vec<RewriteRule>,
    pub(crate) annihilators: Vec<Annihilator>,
}

impl Presentation {
    pub fn free(generators: Vec<Generator>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            let valid = g.name.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
                && g.name.chars().all(|c| c.is_alphanumeric() || c == '_');
            if !valid || g.name == "eps" {
                return Err(Error::Parse {
                    what: "generator name",
                    input: g.name.clone(),
                    reason: "names are identifiers other than eps".into(),
                });
            }
            if index.insert(g.name.clone(), i).is_some() {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
        }
        Ok(Presentation {
            name: None,
            generators,
            index,
            relation_sources: Vec::new(),
            rules: Vec::new(),
            annihilators: Vec::new(),
        })
    }

    /// Relations are read as expressions in the reference product.
    pub fn new<S: AsRef<str>>(generators: Vec<Generator>, relations: &[S]) -> Result<Self> {
        let mut pres = Presentation::free(generators)?;
        for source in relations {
            pres.add_relation(source.as_ref())?;
        }
        Ok(pres)
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn add_relation(&mut self, source: &str) -> Result<()> {
        let bad = |reason: &str| Error::BadRelation {
            relation: source.to_string(),
            reason: reason.to_string(),
        };
        let expr: ProductExpr = source.parse()?;
        let free = Presentation::free(self.generators.clone())?;
        let value = eval_generic(&expr, &Convention::reference(), &free)?;
        let mut terms = value.into_terms();
        let Some((lead, lead_coef)) = terms.pop() else {
            // already implied by graded commutativity
            self.relation_sources.push(source.to_string());
            return Ok(());
        };
        if let Some(unit) = lead_coef.as_unit() {
            terms.reverse();
            self.rules.push(RewriteRule {
                lead,
                unit,
                tail: terms,
            });
        } else if terms.is_empty() {
            self.annihilators.push(Annihilator {
                monomial: lead,
                coef: lead_coef,
            });
        } else {
            return Err(bad(
                "the leading coefficient must be a unit unless the relation is a single term",
            ));
        }
        self.relation_sources.push(source.to_string());
        Ok(())
    }

    pub fn from_file(file: PresentationFile) -> Result<Self> {
        let pres = Presentation::new(file.generators, &file.relations)?;
        Ok(match file.name {
            Some(n) => pres.with_name(&n),
            None => pres,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Presentation::from_file(serde_json::from_str(text)?)
    }

    pub fn to_file(&self) -> PresentationFile {
        PresentationFile {
            name: self.name.clone(),
            generators: self.generators.clone(),
            relations: self.relation_sources.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("plain data serializes")
    }

    /// The same generators with every relation dropped.
    pub fn without_relations(&self) -> Self {
        let mut free = Presentation::free(self.generators.clone()).expect("already validated");
        free.name = self.name.clone();
        free
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[String] {
        &self.relation_sources
    }

    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::Unknown {
            what: "generator",
            name: name.to_string(),
        })
    }

    pub fn degree_of(&self, generator: usize) -> Bidegree {
        self.generators[generator].degree
    }

    pub fn monomial_degree(&self, m: &Monomial) -> Bidegree {
        m.factors().iter().map(|&g| self.degree_of(g)).sum()
    }

    /// Ideal of coefficients annihilating `m`: everything that annihilates a
    /// factor of `m` annihilates `m`.
    /// Ideal of coefficients that vanish on `m`: the annihilator relations
    /// whose monomial divides `m`, and `1 - w(d, d)` for every generator of
    /// degree `d` that occurs at least twice, since `x x = w(d, d) x x`.
    pub fn annihilator_ideal(&self, m: &Monomial) -> CoefIdeal {
        let squares = m
            .factors()
            .windows(2)
            .filter(|w| w[0] == w[1])
            .filter_map(|w| {
                let d = self.degree_of(w[0]);
                let u = base_kappa(d, d);
                (!u.is_one()).then(|| Coef::one() - u.to_coef())
            })
            .collect::<Vec<_>>();
        CoefIdeal::generated_by(
            self.annihilators
                .iter()
                .filter(|a| a.monomial.divides(m))
                .map(|a| &a.coef)
                .chain(&squares),
        )
    }

    /// Whether `1 - eps` kills the generator.
    pub fn killed_by_one_minus_eps(&self, generator: usize) -> bool {
        self.annihilator_ideal(&Monomial::from_sorted(vec![generator]))
            .contains(&Coef::one_minus_eps())
    }

    pub fn render(&self, e: &Element) -> String {
        e.render(self)
    }

    pub fn element(&self, name: &str) -> Result<Element> {
        let g = self.lookup(name)?;
        Ok(Element::monomial(
            Monomial::from_sorted(vec![g]),
            Coef::one(),
            self.degree_of(g),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Coef {
        s.parse().unwrap()
    }

    #[test]
    fn one_minus_eps_ideal() {
        let ideal = CoefIdeal::generated_by([&Coef::one_minus_eps()]);
        assert_eq!(ideal.reduce(&Coef::eps()), Coef::one());
        assert_eq!(ideal.reduce(&c("3-eps")), Coef::int(2));
        assert!(ideal.contains(&c("-4+4*eps")));
        assert!(!ideal.contains(&Coef::int(2)));
    }

    #[test]
    fn reduction_is_constant_on_cosets() {
        let gens = [
            vec![Coef::one_minus_eps()],
            vec![c("1+eps")],
            vec![Coef::int(2)],
            vec![c("2-2*eps"), Coef::int(6)],
            vec![c("3+eps")],
            vec![],
        ];
        for g in &gens {
            let ideal = CoefIdeal::generated_by(g);
            for a in -6i64..=6 {
                for b in -6i64..=6 {
                    let x = Coef::new(a, b);
                    let r = ideal.reduce(&x);
                    assert_eq!(ideal.reduce(&r), r);
                    for gi in g {
                        for (p, q) in [(1, 0), (0, 1), (-3, 2), (5, 7)] {
                            let shifted = &x + &(gi * &Coef::new(p, q));
                            assert_eq!(ideal.reduce(&shifted), r, "{x} vs {shifted} for {g:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn quotient_sizes() {
        // index of the ideal in Z^2 = |norm| for a principal ideal
        for (gen, size) in [(c("3+eps"), 8usize), (Coef::int(2), 4), (c("2+eps"), 3)] {
            let ideal = CoefIdeal::generated_by([&gen]);
            let mut reps = std::collections::HashSet::new();
            for a in -12i64..=12 {
                for b in -12i64..=12 {
                    reps.insert(ideal.reduce(&Coef::new(a, b)));
                }
            }
            assert_eq!(reps.len(), size, "{gen}");
        }
        let ideal = CoefIdeal::generated_by([&c("2-2*eps"), &Coef::int(6)]);
        let mut reps = std::collections::HashSet::new();
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                reps.insert(ideal.reduce(&Coef::new(a, b)));
            }
        }
        // lattice spanned by (2,-2), (-2,2), (6,0), (0,6) has index 12
        assert_eq!(reps.len(), 12);
    }

    #[test]
    fn equal_classes_reduce_equally() {
        let ideal = CoefIdeal::generated_by([&c("3+eps")]);
        // norm 8: the ideal has index 8 in Z^2
        let mut reps = std::collections::HashSet::new();
        for a in -10i64..=10 {
            for b in -10i64..=10 {
                reps.insert(ideal.reduce(&Coef::new(a, b)));
            }
        }
        assert_eq!(reps.len(), 8);
        let x = Coef::new(5, -2);
        let y = &x + &(&c("3+eps") * &c("-7+4*eps"));
        assert_eq!(ideal.reduce(&x), ideal.reduce(&y));
    }

    #[test]
    fn duplicate_generators_rejected() {
        let gens = vec![
            Generator::new("x", Bidegree::new(1, 0)),
            Generator::new("x", Bidegree::new(0, 1)),
        ];
        assert_eq!(
            Presentation::free(gens).unwrap_err(),
            Error::DuplicateGenerator("x".into())
        );
    }

    #[test]
    fn relation_classification() {
        let gens = vec![
            Generator::new("x", Bidegree::new(1, 0)),
            Generator::new("y", Bidegree::new(1, 0)),
        ];
        let pres = Presentation::new(gens.clone(), &["x - 3*y", "(1-eps)*y"]).unwrap();
        assert_eq!(pres.rules.len(), 1);
        assert_eq!(pres.annihilators.len(), 1);
        let err = Presentation::new(gens.clone(), &["2*x + y"]).unwrap_err();
        assert!(matches!(err, Error::BadRelation { .. }));
        let pres = Presentation::new(gens.clone(), &["x - x", "2*y^2"]).unwrap();
        assert!(pres.rules.is_empty() && pres.annihilators.is_empty());
        assert_eq!(pres.relations().len(), 2);
        assert!(Presentation::new(gens, &["x + x*y"]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{
            "generators": [{"name": "a", "degree": [1, 0]}, {"name": "b", "degree": [0, 1]}],
            "relations": ["(1-eps)*b"]
        }"#;
        let pres = Presentation::from_json(text).unwrap();
        let again = Presentation::from_json(&pres.to_json()).unwrap();
        assert_eq!(again.to_file(), pres.to_file());
        assert!(pres.killed_by_one_minus_eps(1));
        assert!(!pres.killed_by_one_minus_eps(0));
    }
}
