//! Unit-valued 2-cocycles on `Z x Z`.
//!
//! Every class in `H^2(Z x Z; A)` for an elementary abelian 2-group `A` has a
//! bilinear representative, so twists are stored as bilinear forms
//! `alpha(a, b) = m11^(a1 b1) m12^(a1 b2) m21^(a2 b1) m22^(a2 b2)`. Because the
//! four units are distinct in the generic coefficient ring, two cocycles are
//! equal as functions exactly when their four entries agree.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Mul, RangeInclusive};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::{Bidegree, UnitExp};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
pub struct BilinearCocycle {
    pub m11: UnitExp,
    pub m12: UnitExp,
    pub m21: UnitExp,
    pub m22: UnitExp,
}

impl BilinearCocycle {
    pub const TRIVIAL: BilinearCocycle = BilinearCocycle {
        m11: UnitExp::ONE,
        m12: UnitExp::ONE,
        m21: UnitExp::ONE,
        m22: UnitExp::ONE,
    };

    pub fn new(m11: UnitExp, m12: UnitExp, m21: UnitExp, m22: UnitExp) -> Self {
        BilinearCocycle { m11, m12, m21, m22 }
    }

    /// The twist `u^(a2 (b1 - b2))` that charges `u` for every swap of a Tate
    /// circle past a simplicial circle.
    pub fn alpha_u(u: UnitExp) -> Self {
        BilinearCocycle::new(UnitExp::ONE, UnitExp::ONE, u, u.inv())
    }

    pub fn eval(&self, a: Bidegree, b: Bidegree) -> UnitExp {
        self.m11.pow2(a.p, b.p)
            * self.m12.pow2(a.p, b.q)
            * self.m21.pow2(a.q, b.p)
            * self.m22.pow2(a.q, b.q)
    }

    /// Every entry inverted; for the four-group this is the cocycle itself.
    pub fn inv(&self) -> Self {
        BilinearCocycle::new(self.m11.inv(), self.m12.inv(), self.m21.inv(), self.m22.inv())
    }

    /// The transposed form `(a, b) -> alpha(b, a)`.
    pub fn transpose(&self) -> Self {
        BilinearCocycle::new(self.m11, self.m21, self.m12, self.m22)
    }

    pub fn is_symmetric(&self) -> bool {
        self.m12 == self.m21
    }

    /// `m12 / m21`, the complete invariant of the cohomology class.
    pub fn antisymmetrization(&self) -> UnitExp {
        self.m12 * self.m21.inv()
    }

    /// A cochain whose coboundary is `self`, when one exists.
    pub fn coboundary_witness(&self) -> Option<QuadraticCochain> {
        self.is_symmetric().then_some(QuadraticCochain {
            c12: self.m12,
            c11: self.m11,
            c22: self.m22,
            ..QuadraticCochain::TRIVIAL
        })
    }

    pub fn is_coboundary(&self) -> bool {
        self.coboundary_witness().is_some()
    }

    pub fn entries(&self) -> [UnitExp; 4] {
        [self.m11, self.m12, self.m21, self.m22]
    }

    pub fn all_with_entries(units: &[UnitExp]) -> Vec<BilinearCocycle> {
        let mut out = Vec::with_capacity(units.len().pow(4));
        for &m11 in units {
            for &m12 in units {
                for &m21 in units {
                    for &m22 in units {
                        out.push(BilinearCocycle::new(m11, m12, m21, m22));
                    }
                }
            }
        }
        out
    }
}

impl Mul for BilinearCocycle {
    type Output = BilinearCocycle;

    fn mul(self, rhs: BilinearCocycle) -> BilinearCocycle {
        BilinearCocycle::new(
            self.m11 * rhs.m11,
            self.m12 * rhs.m12,
            self.m21 * rhs.m21,
            self.m22 * rhs.m22,
        )
    }
}

impl fmt::Display for BilinearCocycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "m11={} m12={} m21={} m22={}",
            self.m11, self.m12, self.m21, self.m22
        )
    }
}

/// A reduced 1-cochain
/// `beta(a) = c1^a1 c2^a2 c12^(a1 a2) c11^(a1(a1-1)/2) c22^(a2(a2-1)/2)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct QuadraticCochain {
    pub c1: UnitExp,
    pub c2: UnitExp,
    pub c12: UnitExp,
    pub c11: UnitExp,
    pub c22: UnitExp,
}

/// Parity of `n(n-1)/2`.
fn binom2_parity(n: i64) -> i64 {
    (n.rem_euclid(4) >= 2) as i64
}

impl QuadraticCochain {
    pub const TRIVIAL: QuadraticCochain = QuadraticCochain {
        c1: UnitExp::ONE,
        c2: UnitExp::ONE,
        c12: UnitExp::ONE,
        c11: UnitExp::ONE,
        c22: UnitExp::ONE,
    };

    pub fn eval(&self, a: Bidegree) -> UnitExp {
        self.c1.pow(a.p)
            * self.c2.pow(a.q)
            * self.c12.pow2(a.p, a.q)
            * self.c11.pow(binom2_parity(a.p))
            * self.c22.pow(binom2_parity(a.q))
    }

    /// `delta beta (a, b) = beta(a) beta(b) / beta(a + b)`. The linear parts
    /// cancel and the quadratic parts leave a symmetric bilinear form.
    pub fn coboundary(&self) -> BilinearCocycle {
        BilinearCocycle::new(self.c11, self.c12, self.c12, self.c22)
    }

    pub fn all_with_entries(units: &[UnitExp]) -> Vec<QuadraticCochain> {
        let mut out = Vec::with_capacity(units.len().pow(5));
        for &c1 in units {
            for &c2 in units {
                for &c12 in units {
                    for &c11 in units {
                        for &c22 in units {
                            out.push(QuadraticCochain { c1, c2, c12, c11, c22 });
                        }
                    }
                }
            }
        }
        out
    }
}

/// A square window `[lo, hi]^2` of bidegrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Grid {
    pub lo: i64,
    pub hi: i64,
}

impl Grid {
    pub fn new(range: RangeInclusive<i64>) -> Self {
        Grid {
            lo: *range.start(),
            hi: *range.end(),
        }
    }

    pub fn symmetric(radius: i64) -> Self {
        Grid::new(-radius..=radius)
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn points(&self) -> impl Iterator<Item = Bidegree> + Clone {
        let (lo, hi) = (self.lo, self.hi);
        (lo..=hi).flat_map(move |p| (lo..=hi).map(move |q| Bidegree::new(p, q)))
    }
}

impl Default for Grid {
    fn default() -> Self {
        Grid::symmetric(4)
    }
}

/// First triple `(u, v, w)` of grid bidegrees, in lexicographic order, where
/// `f(u+v, w) f(u, v) = f(v, w) f(u, v+w)` fails.
pub fn cocycle_identity_witness<F>(f: F, grid: Grid) -> Option<[Bidegree; 3]>
where
    F: Fn(Bidegree, Bidegree) -> UnitExp,
{
    if grid.is_empty() {
        return None;
    }
    // Units as two-bit codes, so products are XORs. Sums u+v land in the
    // doubled window, indexed so that index(u + v) = index(u) + index(v) - index(0).
    let code = |x: UnitExp| x.s() | (x.t() << 1);
    let wide = Grid::new(2 * grid.lo..=2 * grid.hi);
    let side = (wide.hi - wide.lo + 1) as usize;
    let index = |d: Bidegree| ((d.p - wide.lo) as usize) * side + (d.q - wide.lo) as usize;
    let origin = index(Bidegree::ZERO);
    let narrow: Vec<Bidegree> = grid.points().collect();
    let slots: Vec<usize> = narrow.iter().map(|&d| index(d)).collect();
    let n = narrow.len();
    let cells = side * side;

    // f(wide, narrow) and f(narrow, wide)
    let mut left = vec![0u8; cells * n];
    let mut right = vec![0u8; n * cells];
    for a in wide.points() {
        for (j, &b) in narrow.iter().enumerate() {
            left[index(a) * n + j] = code(f(a, b));
            right[j * cells + index(a)] = code(f(b, a));
        }
    }
    for (i, &u) in slots.iter().enumerate() {
        let f_u = &right[i * cells..(i + 1) * cells];
        for (j, &v) in slots.iter().enumerate() {
            let uv = u + v - origin;
            let f_uv_w = &left[uv * n..(uv + 1) * n];
            let f_v_w = &left[v * n..(v + 1) * n];
            let f_uv = f_u[v];
            for (k, &w) in slots.iter().enumerate() {
                if f_uv_w[k] ^ f_uv ^ f_v_w[k] ^ f_u[v + w - origin] != 0 {
                    return Some([narrow[i], narrow[j], narrow[k]]);
                }
            }
        }
    }
    None
}

pub fn satisfies_cocycle_identity<F>(f: F, grid: Grid) -> bool
where
    F: Fn(Bidegree, Bidegree) -> UnitExp,
{
    cocycle_identity_witness(f, grid).is_none()
}

/// Subgroups of `{1, -1, eps, -eps}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnitSubgroup {
    Trivial,
    GenMinusOne,
    GenEps,
    GenMinusEps,
    Full,
}

impl UnitSubgroup {
    pub const ALL: [UnitSubgroup; 5] = [
        UnitSubgroup::Trivial,
        UnitSubgroup::GenMinusOne,
        UnitSubgroup::GenEps,
        UnitSubgroup::GenMinusEps,
        UnitSubgroup::Full,
    ];

    pub fn elements(self) -> Vec<UnitExp> {
        match self {
            UnitSubgroup::Trivial => vec![UnitExp::ONE],
            UnitSubgroup::GenMinusOne => vec![UnitExp::ONE, UnitExp::MINUS_ONE],
            UnitSubgroup::GenEps => vec![UnitExp::ONE, UnitExp::EPS],
            UnitSubgroup::GenMinusEps => vec![UnitExp::ONE, UnitExp::MINUS_EPS],
            UnitSubgroup::Full => UnitExp::ALL.to_vec(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            UnitSubgroup::Trivial => "trivial",
            UnitSubgroup::GenMinusOne => "gen-minus-one",
            UnitSubgroup::GenEps => "gen-eps",
            UnitSubgroup::GenMinusEps => "gen-minus-eps",
            UnitSubgroup::Full => "full",
        }
    }
}

impl FromStr for UnitSubgroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().strip_prefix("gen-").unwrap_or(s.trim());
        Ok(match key {
            "trivial" | "1" => UnitSubgroup::Trivial,
            "minus-one" | "-1" => UnitSubgroup::GenMinusOne,
            "eps" | "epsilon" => UnitSubgroup::GenEps,
            "minus-eps" | "minus-epsilon" | "-eps" => UnitSubgroup::GenMinusEps,
            "full" | "all" => UnitSubgroup::Full,
            _ => {
                return Err(Error::Unknown {
                    what: "unit subgroup",
                    name: s.to_string(),
                })
            }
        })
    }
}

/// Number of cohomology classes among bilinear cocycles with entries in
/// `sub`, found by sorting every such cocycle into its coset of the
/// coboundaries of cochains with entries in `sub`.
pub fn count_classes(sub: UnitSubgroup) -> usize {
    let units = sub.elements();
    let boundaries: BTreeSet<BilinearCocycle> = QuadraticCochain::all_with_entries(&units)
        .iter()
        .map(QuadraticCochain::coboundary)
        .collect();
    let cosets: BTreeSet<BilinearCocycle> = BilinearCocycle::all_with_entries(&units)
        .into_iter()
        .map(|alpha| {
            boundaries
                .iter()
                .map(|&b| alpha * b)
                .min()
                .expect("coboundaries include the trivial cocycle")
        })
        .collect();
    cosets.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    const EPS: UnitExp = UnitExp::EPS;
    const M1: UnitExp = UnitExp::MINUS_ONE;

    fn d(p: i64, q: i64) -> Bidegree {
        Bidegree::new(p, q)
    }

    #[test]
    fn alpha_u_entries() {
        assert_eq!(BilinearCocycle::alpha_u(UnitExp::ONE), BilinearCocycle::TRIVIAL);
        let a = BilinearCocycle::alpha_u(EPS);
        assert_eq!(a.entries(), [UnitExp::ONE, UnitExp::ONE, EPS, EPS]);
    }

    #[test]
    fn evaluation_examples() {
        let a_eps = BilinearCocycle::alpha_u(EPS);
        assert_eq!(a_eps.eval(d(1, 1), d(3, 2)), EPS);
        assert_eq!(BilinearCocycle::alpha_u(M1).eval(d(0, -1), d(3, 2)), M1);
        assert_eq!(BilinearCocycle::alpha_u(M1).eval(d(0, 1), d(1, 0)), M1);
        for alpha in BilinearCocycle::all_with_entries(&UnitExp::ALL) {
            for b in Grid::symmetric(2).points() {
                assert!(alpha.eval(Bidegree::ZERO, b).is_one());
                assert!(alpha.eval(b, Bidegree::ZERO).is_one());
            }
        }
    }

    #[test]
    fn evaluation_matches_direct_exponent() {
        for u in UnitExp::ALL {
            let alpha = BilinearCocycle::alpha_u(u);
            for a in Grid::symmetric(3).points() {
                for b in Grid::symmetric(3).points() {
                    assert_eq!(alpha.eval(a, b), u.pow(a.q * (b.p - b.q)));
                }
            }
        }
    }

    #[test]
    fn preset_twists_are_cocycles() {
        for u in UnitExp::ALL {
            let alpha = BilinearCocycle::alpha_u(u);
            assert!(satisfies_cocycle_identity(|a, b| alpha.eval(a, b), Grid::symmetric(3)));
        }
    }

    #[test]
    fn non_cocycle_is_caught() {
        let f = |a: Bidegree, _b: Bidegree| M1.pow(a.p);
        let witness = cocycle_identity_witness(f, Grid::symmetric(2)).expect("fails");
        let [u, v, w] = witness;
        assert_ne!(f(u + v, w) * f(u, v), f(v, w) * f(u, v + w));
        let e = d(1, 0);
        assert_ne!(f(e + e, e) * f(e, e), f(e, e) * f(e, e + e));
    }

    #[test]
    fn coboundary_matches_pointwise_formula() {
        for beta in QuadraticCochain::all_with_entries(&UnitExp::ALL) {
            let delta = beta.coboundary();
            for a in Grid::symmetric(3).points() {
                for b in Grid::symmetric(3).points() {
                    let direct = beta.eval(a) * beta.eval(b) * beta.eval(a + b).inv();
                    assert_eq!(delta.eval(a, b), direct, "{beta:?} at {a} {b}");
                }
            }
        }
    }

    #[test]
    fn coboundary_examples() {
        assert_eq!(QuadraticCochain::TRIVIAL.coboundary(), BilinearCocycle::TRIVIAL);
        let beta = QuadraticCochain {
            c12: M1,
            ..QuadraticCochain::TRIVIAL
        };
        assert_eq!(
            beta.coboundary(),
            BilinearCocycle::new(UnitExp::ONE, M1, M1, UnitExp::ONE)
        );
        assert_eq!(QuadraticCochain::TRIVIAL.eval(d(5, -3)), UnitExp::ONE);
    }

    #[test]
    fn symmetry_and_coboundaries() {
        assert!(BilinearCocycle::alpha_u(UnitExp::ONE).is_symmetric());
        assert!(!BilinearCocycle::alpha_u(EPS).is_symmetric());
        assert!(!BilinearCocycle::alpha_u(M1).is_coboundary());
        let a = BilinearCocycle::alpha_u(EPS);
        let square = a * a;
        let beta = square.coboundary_witness().expect("squares are coboundaries");
        assert_eq!(beta.coboundary(), square);
    }

    #[test]
    fn every_symmetric_cocycle_has_a_reconstructing_witness() {
        for alpha in BilinearCocycle::all_with_entries(&UnitExp::ALL) {
            match alpha.coboundary_witness() {
                Some(beta) => assert_eq!(beta.coboundary(), alpha),
                None => assert!(!alpha.is_symmetric()),
            }
        }
    }

    #[test]
    fn class_counts() {
        assert_eq!(count_classes(UnitSubgroup::Trivial), 1);
        assert_eq!(count_classes(UnitSubgroup::GenMinusOne), 2);
        assert_eq!(count_classes(UnitSubgroup::GenEps), 2);
        assert_eq!(count_classes(UnitSubgroup::Full), 4);
    }

    #[test]
    fn class_count_matches_antisymmetrization_image() {
        for sub in UnitSubgroup::ALL {
            let invariants: BTreeSet<UnitExp> = BilinearCocycle::all_with_entries(&sub.elements())
                .iter()
                .map(BilinearCocycle::antisymmetrization)
                .collect();
            assert_eq!(count_classes(sub), invariants.len());
        }
    }

    #[test]
    fn torsor_structure() {
        let all = BilinearCocycle::all_with_entries(&UnitExp::ALL);
        let boundaries: Vec<_> = QuadraticCochain::all_with_entries(&UnitExp::ALL)
            .iter()
            .map(QuadraticCochain::coboundary)
            .collect();
        for (i, &alpha) in all.iter().enumerate().step_by(7) {
            let beta = all[(i * 31 + 5) % all.len()];
            assert!(satisfies_cocycle_identity(|a, b| (alpha * beta).eval(a, b), Grid::symmetric(2)));
            for &b in boundaries.iter().step_by(13) {
                assert_eq!((alpha * b.inv()).antisymmetrization(), alpha.antisymmetrization());
            }
        }
    }

    #[test]
    fn json_schema() {
        let alpha = BilinearCocycle::alpha_u(UnitExp::MINUS_EPS);
        let json = serde_json::to_string(&alpha).unwrap();
        assert_eq!(json, r#"{"m11":"1","m12":"1","m21":"-eps","m22":"-eps"}"#);
        let back: BilinearCocycle = serde_json::from_str(&json).unwrap();
        assert_eq!(back, alpha);
        let beta: QuadraticCochain =
            serde_json::from_str(r#"{"c1":"1","c2":"-1","c12":"eps","c11":"1","c22":"-eps"}"#).unwrap();
        assert_eq!(beta.c12, EPS);
    }

    #[test]
    fn subgroup_names() {
        assert_eq!("minus-one".parse::<UnitSubgroup>().unwrap(), UnitSubgroup::GenMinusOne);
        assert_eq!("gen-eps".parse::<UnitSubgroup>().unwrap(), UnitSubgroup::GenEps);
        assert!("half".parse::<UnitSubgroup>().is_err());
    }
}
