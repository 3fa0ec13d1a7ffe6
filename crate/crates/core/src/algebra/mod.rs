//! Presented bigraded algebras over `Z[eps]/(eps^2 - 1)`.
//!
//! Elements are always written in the basis of sorted words of the
//! *reference* product; a convention only changes how two elements
//! multiply (`x ._c y = alpha_c(|x|, |y|) x . y`). Sorting a word costs the
//! commutation unit of every adjacent transposition.
//!
//! Every computation runs in the generic coefficient ring and is specialized
//! to the convention's mode only at the end. Relations are therefore applied
//! before specialization and not re-derived afterwards.

mod expr;
mod presentation;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

pub use expr::ProductExpr;
pub use presentation::{CoefIdeal, Generator, Presentation, PresentationFile};

use crate::conventions::{base_kappa, Convention};
use crate::error::{Error, Result};
use crate::units::{Bidegree, Coef, CoefMode, UnitExp};

/// Cap on rewrite steps for a single reduction.
pub const MAX_REWRITE_PASSES: usize = 10_000;

/// A sorted word in the generators, compared degree-lexicographically with
/// earlier generators ranking higher.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<usize>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_sorted(factors: Vec<usize>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0] <= w[1]));
        Monomial(factors)
    }

    pub fn factors(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiset inclusion.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.quotient_of(other).is_some()
    }

    /// `other / self` as a multiset difference.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        let mut rest = Vec::with_capacity(other.len().saturating_sub(self.len()));
        let mut mine = self.0.iter().peekable();
        for &g in &other.0 {
            match mine.peek() {
                Some(&&h) if h == g => {
                    mine.next();
                }
                Some(&&h) if h < g => return None,
                _ => rest.push(g),
            }
        }
        mine.peek().is_none().then_some(Monomial(rest))
    }

    fn render(&self, pres: &Presentation) -> String {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let g = self.0[i];
            let run = self.0[i..].iter().take_while(|&&h| h == g).count();
            let name = &pres.generators()[g].name;
            parts.push(if run == 1 {
                name.clone()
            } else {
                format!("{name}^{run}")
            });
            i += run;
        }
        parts.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A homogeneous combination of reference-basis monomials. Zero has no
/// degree; no zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Monomial, Coef>,
    degree: Option<Bidegree>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn monomial(m: Monomial, c: Coef, degree: Bidegree) -> Self {
        let mut e = Element {
            terms: BTreeMap::new(),
            degree: Some(degree),
        };
        e.add_term(m, c);
        e.fix_degree();
        e
    }

    pub fn scalar(c: Coef) -> Self {
        Element::monomial(Monomial::one(), c, Bidegree::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<Bidegree> {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coef {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Terms from the leading monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coef)> {
        self.terms.iter().rev()
    }

    /// Terms in increasing order, so the leading term is last.
    pub fn into_terms(self) -> Vec<(Monomial, Coef)> {
        self.terms.into_iter().collect()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Coef)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: Coef) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    fn fix_degree(&mut self) {
        if self.terms.is_empty() {
            self.degree = None;
        }
    }

    pub fn scale(&self, c: &Coef) -> Element {
        let mut out = Element {
            terms: BTreeMap::new(),
            degree: self.degree,
        };
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out.fix_degree();
        out
    }

    pub fn scale_unit(&self, u: UnitExp) -> Element {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.scale(u);
        }
        out
    }

    pub fn neg(&self) -> Element {
        self.scale_unit(UnitExp::MINUS_ONE)
    }

    pub fn checked_add(&self, other: &Element) -> Result<Element> {
        let degree = match (self.degree, other.degree) {
            (Some(a), Some(b)) if a != b => return Err(Error::Inhomogeneous { left: a, right: b }),
            (a, b) => a.or(b),
        };
        let mut out = Element {
            terms: self.terms.clone(),
            degree,
        };
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out.fix_degree();
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Element) -> Result<Element> {
        self.checked_add(&other.neg())
    }

    /// Image under a specialization of the coefficients.
    pub fn specialize(&self, mode: CoefMode) -> Element {
        if mode.is_generic() {
            return self.clone();
        }
        let mut out = Element {
            terms: BTreeMap::new(),
            degree: self.degree,
        };
        for (m, c) in &self.terms {
            out.add_term(m.clone(), mode.specialize(c));
        }
        out.fix_degree();
        out
    }

    /// Text in the expression grammar, leading term first.
    pub fn render(&self, pres: &Presentation) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms().enumerate() {
            let word = m.render(pres);
            let coef = if c.a.is_zero() || c.b.is_zero() {
                c.to_string()
            } else {
                format!("({c})")
            };
            let term = match (coef.as_str(), word.is_empty()) {
                (_, true) => coef,
                ("1", false) => word,
                ("-1", false) => format!("-{word}"),
                (_, false) => format!("{coef}*{word}"),
            };
            match (i, term.strip_prefix('-')) {
                (0, _) => out.push_str(&term),
                (_, Some(rest)) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                (_, None) => {
                    out.push_str(" + ");
                    out.push_str(&term);
                }
            }
        }
        out
    }
}

/// Sorts a word into canonical order by adjacent transpositions, returning
/// the product of `law(left, right)` over every swap performed.
pub fn sort_word<F>(word: &[usize], pres: &Presentation, law: F) -> (UnitExp, Monomial)
where
    F: Fn(Bidegree, Bidegree) -> UnitExp,
{
    let mut w = word.to_vec();
    let mut sign = UnitExp::ONE;
    for i in 1..w.len() {
        let mut j = i;
        while j > 0 && w[j - 1] > w[j] {
            sign = sign * law(pres.degree_of(w[j - 1]), pres.degree_of(w[j]));
            w.swap(j - 1, j);
            j -= 1;
        }
    }
    (sign, Monomial(w))
}

/// The unit `c` with `g1 ._c g2 ._c ... ._c gk = c (g1 . g2 . ... . gk)`
/// for left-nested products.
pub fn word_twist(word: &[usize], conv: &Convention, pres: &Presentation) -> UnitExp {
    let mut prefix = Bidegree::ZERO;
    let mut total = UnitExp::ONE;
    for &g in word {
        let d = pres.degree_of(g);
        total = total * conv.twist.eval(prefix, d);
        prefix = prefix + d;
    }
    total
}

fn kappa_sort(word: &[usize], pres: &Presentation) -> (UnitExp, Monomial) {
    sort_word(word, pres, base_kappa)
}

/// Rewrites with the unit-leading relations until no leading monomial
/// divides any term, then reduces each coefficient modulo the annihilator
/// ideal of its monomial.
pub fn reduce(e: &Element, pres: &Presentation) -> Result<Element> {
    let mut terms = e.terms.clone();
    let mut passes = 0;
    while let Some((m, rule, rest)) = find_redex(&terms, pres) {
        passes += 1;
        if passes > MAX_REWRITE_PASSES {
            return Err(Error::RewriteLimit {
                passes: MAX_REWRITE_PASSES,
            });
        }
        let c = terms.remove(&m).expect("redex is a stored term");
        let mut joined = rule.lead.0.clone();
        joined.extend_from_slice(&rest.0);
        let (s, sorted) = kappa_sort(&joined, pres);
        debug_assert_eq!(sorted, m);
        // c m = c s (lead . rest) = -c s unit^-1 (tail . rest)
        let factor = c.scale(s * rule.unit.inv() * UnitExp::MINUS_ONE);
        for (t, tc) in &rule.tail {
            let mut word = t.0.clone();
            word.extend_from_slice(&rest.0);
            let (s2, target) = kappa_sort(&word, pres);
            if target >= m {
                return Err(Error::RewriteOrder {
                    from: m.render(pres),
                    to: target.render(pres),
                });
            }
            let slot = terms.entry(target).or_default();
            *slot += &(&factor * tc).scale(s2);
        }
        terms.retain(|_, c| !c.is_zero());
    }
    for (m, c) in terms.iter_mut() {
        let ideal = pres.annihilator_ideal(m);
        if !ideal.is_zero() {
            *c = ideal.reduce(c);
        }
    }
    terms.retain(|_, c| !c.is_zero());
    let mut out = Element {
        terms,
        degree: e.degree,
    };
    out.fix_degree();
    Ok(out)
}

/// Largest term divisible by some rule's leading monomial.
fn find_redex<'p>(
    terms: &BTreeMap<Monomial, Coef>,
    pres: &'p Presentation,
) -> Option<(Monomial, &'p presentation::RewriteRule, Monomial)> {
    terms.keys().rev().find_map(|m| {
        pres.rules
            .iter()
            .find_map(|rule| rule.lead.quotient_of(m).map(|rest| (m.clone(), rule, rest)))
    })
}

fn reference_product(x: &Element, y: &Element, pres: &Presentation) -> Element {
    let (Some(dx), Some(dy)) = (x.degree, y.degree) else {
        return Element::zero();
    };
    let mut out = Element {
        terms: BTreeMap::new(),
        degree: Some(dx + dy),
    };
    for (m1, c1) in &x.terms {
        for (m2, c2) in &y.terms {
            let mut word = m1.0.clone();
            word.extend_from_slice(&m2.0);
            let (s, m) = kappa_sort(&word, pres);
            out.add_term(m, (c1 * c2).scale(s));
        }
    }
    out.fix_degree();
    out
}

fn multiply_generic(x: &Element, y: &Element, conv: &Convention, pres: &Presentation) -> Result<Element> {
    let (Some(dx), Some(dy)) = (x.degree, y.degree) else {
        return Ok(Element::zero());
    };
    let product = reference_product(x, y, pres).scale_unit(conv.twist.eval(dx, dy));
    reduce(&product, pres)
}

/// `x ._c y`, reduced and read in the convention's coefficient mode.
pub fn multiply(x: &Element, y: &Element, conv: &Convention, pres: &Presentation) -> Result<Element> {
    Ok(multiply_generic(x, y, conv, pres)?.specialize(conv.mode))
}

/// Normal form of the left-nested `._c` product of a word of generators.
/// The word is sorted using the convention's own commutation law, then the
/// sorted `._c` word is rewritten in the reference basis.
pub fn normalize(word: &[usize], conv: &Convention, pres: &Presentation) -> Result<Element> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    let (swaps, sorted) = sort_word(word, pres, |a, b| conv.symbolic_commutation_unit(a, b));
    let rebase = word_twist(&sorted.0, conv, pres);
    let degree = pres.monomial_degree(&sorted);
    let e = Element::monomial(sorted, (swaps * rebase).to_coef(), degree);
    Ok(reduce(&e, pres)?.specialize(conv.mode))
}

pub fn normalize_names<S: AsRef<str>>(names: &[S], conv: &Convention, pres: &Presentation) -> Result<Element> {
    let word = names
        .iter()
        .map(|n| pres.lookup(n.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    normalize(&word, conv, pres)
}

/// `x ._c y - w(|x|, |y|) (y ._c x)`, which vanishes whenever the
/// presentation is graded commutative for the convention's law.
pub fn graded_commutator(x: &Element, y: &Element, conv: &Convention, pres: &Presentation) -> Result<Element> {
    let (Some(dx), Some(dy)) = (x.degree, y.degree) else {
        return Ok(Element::zero());
    };
    let xy = multiply_generic(x, y, conv, pres)?;
    let yx = multiply_generic(y, x, conv, pres)?;
    let w = conv.symbolic_commutation_unit(dx, dy);
    Ok(reduce(&xy.checked_sub(&yx.scale_unit(w))?, pres)?.specialize(conv.mode))
}

pub(crate) fn eval_generic(e: &ProductExpr, conv: &Convention, pres: &Presentation) -> Result<Element> {
    Ok(match e {
        ProductExpr::Gen(name) => reduce(&pres.element(name)?, pres)?,
        ProductExpr::Scalar(c) => Element::scalar(c.clone()),
        ProductExpr::Mul(a, b) => {
            let x = eval_generic(a, conv, pres)?;
            let y = eval_generic(b, conv, pres)?;
            multiply_generic(&x, &y, conv, pres)?
        }
        ProductExpr::Add(a, b) => {
            let x = eval_generic(a, conv, pres)?;
            let y = eval_generic(b, conv, pres)?;
            reduce(&x.checked_add(&y)?, pres)?
        }
        ProductExpr::Neg(a) => eval_generic(a, conv, pres)?.neg(),
        ProductExpr::Pow(a, n) => {
            let x = eval_generic(a, conv, pres)?;
            let mut acc = Element::scalar(Coef::one());
            for _ in 0..*n {
                acc = multiply_generic(&acc, &x, conv, pres)?;
            }
            acc
        }
    })
}

/// Evaluates an expression with products taken in the convention.
pub fn eval_expr(e: &ProductExpr, conv: &Convention, pres: &Presentation) -> Result<Element> {
    let generic = conv.clone().with_mode(CoefMode::GENERIC);
    Ok(eval_generic(e, &generic, pres)?.specialize(conv.mode))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransportReport {
    pub from: String,
    pub to: String,
    pub left: String,
    pub right: String,
    pub agree: bool,
    /// The unit `d` with `right = d * left`, when there is one and the two
    /// sides differ.
    pub discrepancy: Option<UnitExp>,
}

/// Evaluates `e` in two conventions and compares the normal forms.
pub fn transport_check(
    e: &ProductExpr,
    from: &Convention,
    to: &Convention,
    pres: &Presentation,
) -> Result<TransportReport> {
    if from.mode != to.mode {
        return Err(Error::ModeMismatch {
            left: from.mode.to_string(),
            right: to.mode.to_string(),
        });
    }
    let left = eval_expr(e, from, pres)?;
    let right = eval_expr(e, to, pres)?;
    let agree = left == right;
    let discrepancy = if agree || left.is_zero() {
        None
    } else {
        UnitExp::ALL
            .into_iter()
            .find(|&u| reduce(&left.scale_unit(u), pres).map(|x| x.specialize(from.mode)).as_ref() == Ok(&right))
    };
    Ok(TransportReport {
        from: from.to_string(),
        to: to.to_string(),
        left: left.render(pres),
        right: right.render(pres),
        agree,
        discrepancy,
    })
}
