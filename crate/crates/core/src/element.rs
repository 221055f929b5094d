//! Exact arithmetic in the differential operator ring `E = A #_f U(g)`.
//!
//! Elements are finitely supported sums of PBW monomials `a * y_1^{e_1} ...
//! y_d^{e_d}` where `a` runs over the `A`-basis and `y_i` is the embedded
//! generator `1 # g_i`. Multiplication rewrites words over the alphabet
//! `{A-basis} ∪ {y_i}` to normal form using the defining relations
//!
//! ```text
//! y_i a   = a y_i + a^{g_i}
//! y_i y_j = y_j y_i + [g_i, g_j] + fhat_ij        (i > j)
//! ```
//!
//! resolving the leftmost inversion first. Termination follows from the
//! lexicographic measure (generator count, inversion count, word length).

use std::collections::BTreeMap;

use crate::data::{combine_comb, RingData};
use crate::scalar::Scalar;

/// Label of an `A`-basis element: an index into a finite basis, or an
/// exponent vector of a monomial in `S(V)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ABasisId {
    Idx(usize),
    Mono(Vec<u32>),
}

/// A PBW basis monomial of `E`: an `A`-basis label times the ordered product
/// of the generators with the given exponents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PbwMonomial {
    pub a: ABasisId,
    pub exps: Vec<u32>,
}

impl PbwMonomial {
    pub fn gen_degree(&self) -> u32 {
        self.exps.iter().sum()
    }
}

/// A finitely supported sum of PBW monomials with exact coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Element {
    terms: BTreeMap<PbwMonomial, Scalar>,
}

impl Element {
    pub fn zero() -> Element {
        Element {
            terms: BTreeMap::new(),
        }
    }

    pub fn one(data: &RingData) -> Element {
        Element::from_monomial(
            PbwMonomial {
                a: data.a_unit_id(),
                exps: vec![0; data.gen_count()],
            },
            data.field.one(),
        )
    }

    /// The embedded generator `1 # g_i`.
    pub fn generator(data: &RingData, i: usize) -> Element {
        let mut exps = vec![0; data.gen_count()];
        exps[i] = 1;
        Element::from_monomial(
            PbwMonomial {
                a: data.a_unit_id(),
                exps,
            },
            data.field.one(),
        )
    }

    /// The element `a # 1` for an `A`-basis label.
    pub fn from_a_basis(data: &RingData, a: ABasisId) -> Element {
        Element::from_monomial(
            PbwMonomial {
                a,
                exps: vec![0; data.gen_count()],
            },
            data.field.one(),
        )
    }

    pub fn from_monomial(m: PbwMonomial, c: Scalar) -> Element {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Element { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(acc) => {
                *acc = acc.add(&c);
                if acc.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.mul(c)))
                .collect(),
        }
    }

    /// Exact product in `E`, via rewriting to PBW normal form.
    pub fn mul(&self, other: &Element, data: &RingData) -> Element {
        let mut out = Element::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let coeff = c1.mul(c2);
                let mut word = Vec::with_capacity(
                    2 + m1.gen_degree() as usize + m2.gen_degree() as usize,
                );
                push_monomial_atoms(data, m1, &mut word);
                push_monomial_atoms(data, m2, &mut word);
                normalize_word(data, coeff, word, &mut out);
            }
        }
        out
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Element, data: &RingData) -> Element {
        self.mul(other, data).sub(&other.mul(self, data))
    }

    /// Total filtration degree: generator degree plus the `A`-grading (when
    /// present). The degree of zero is 0.
    pub fn filtration_degree(&self, data: &RingData) -> u32 {
        self.terms
            .keys()
            .map(|m| m.gen_degree() + data.a_deg(&m.a))
            .max()
            .unwrap_or(0)
    }

    /// Canonical text rendering, monomials sorted by (degree, exponents,
    /// coefficient label), e.g. `3*(e)#x^2`.
    pub fn render(&self, data: &RingData) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut keys: Vec<&PbwMonomial> = self.terms.keys().collect();
        keys.sort_by_key(|m| {
            (
                m.gen_degree() + data.a_deg(&m.a),
                m.exps.clone(),
                m.a.clone(),
            )
        });
        let mut parts = Vec::new();
        for m in keys {
            let c = &self.terms[m];
            let gen_part = render_exps(data, &m.exps);
            let body = format!("({})#{}", data.a_name(&m.a), gen_part);
            if c.is_one() {
                parts.push(body);
            } else {
                parts.push(format!("{c}*{body}"));
            }
        }
        parts.join(" + ")
    }
}

fn render_exps(data: &RingData, exps: &[u32]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, e)| **e > 0)
        .map(|(i, e)| {
            if *e == 1 {
                data.lie.names[i].clone()
            } else {
                format!("{}^{}", data.lie.names[i], e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

/// One letter of an unreduced word in `E`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) enum Atom {
    Gen(usize),
    Co(ABasisId),
}

fn push_monomial_atoms(data: &RingData, m: &PbwMonomial, word: &mut Vec<Atom>) {
    if m.a != data.a_unit_id() {
        word.push(Atom::Co(m.a.clone()));
    }
    for (i, e) in m.exps.iter().enumerate() {
        for _ in 0..*e {
            word.push(Atom::Gen(i));
        }
    }
}

/// Index of the leftmost reducible adjacent pair, if any.
fn find_redex(word: &[Atom]) -> Option<usize> {
    word.windows(2).position(|w| match (&w[0], &w[1]) {
        (Atom::Co(_), Atom::Co(_)) => true,
        (Atom::Gen(_), Atom::Co(_)) => true,
        (Atom::Gen(i), Atom::Gen(j)) => i > j,
        (Atom::Co(_), Atom::Gen(_)) => false,
    })
}

/// Applies the unique rewriting rule at position `pos`, returning the
/// replacement terms, or `None` when the pair at `pos` is not reducible.
pub(crate) fn rewrite_at(
    data: &RingData,
    word: &[Atom],
    pos: usize,
) -> Option<Vec<(Scalar, Vec<Atom>)>> {
    let replace = |mid: Vec<Atom>| -> Vec<Atom> {
        let mut w = Vec::with_capacity(word.len() + mid.len());
        w.extend_from_slice(&word[..pos]);
        w.extend(mid);
        w.extend_from_slice(&word[pos + 2..]);
        w
    };
    let one = data.field.one();
    match (&word[pos], &word[pos + 1]) {
        (Atom::Co(a), Atom::Co(b)) => {
            let mut parts = Vec::new();
            for (id, c) in data.a_mul_ids(a, b) {
                let mid = if id == data.a_unit_id() {
                    vec![]
                } else {
                    vec![Atom::Co(id)]
                };
                parts.push((c, replace(mid)));
            }
            Some(parts)
        }
        (Atom::Gen(i), Atom::Co(b)) => {
            let mut parts = vec![(one, replace(vec![Atom::Co(b.clone()), Atom::Gen(*i)]))];
            for (id, c) in data.a_act(*i, b) {
                let mid = if id == data.a_unit_id() {
                    vec![]
                } else {
                    vec![Atom::Co(id)]
                };
                parts.push((c, replace(mid)));
            }
            Some(parts)
        }
        (Atom::Gen(i), Atom::Gen(j)) if i > j => {
            let mut parts = vec![(one, replace(vec![Atom::Gen(*j), Atom::Gen(*i)]))];
            for (k, c) in data.bracket(*i, *j).iter() {
                parts.push((c.clone(), replace(vec![Atom::Gen(*k)])));
            }
            for (id, c) in data.fhat_comb(*i, *j) {
                let mid = if id == data.a_unit_id() {
                    vec![]
                } else {
                    vec![Atom::Co(id)]
                };
                parts.push((c, replace(mid)));
            }
            Some(parts)
        }
        _ => None,
    }
}

/// Rewrites `coeff * word` to normal form and accumulates it into `out`.
pub(crate) fn normalize_word(
    data: &RingData,
    coeff: Scalar,
    word: Vec<Atom>,
    out: &mut Element,
) {
    if coeff.is_zero() {
        return;
    }
    let mut work = vec![(coeff, word)];
    while let Some((c, w)) = work.pop() {
        match find_redex(&w) {
            Some(pos) => {
                for (c2, w2) in rewrite_at(data, &w, pos).unwrap() {
                    let cc = c.mul(&c2);
                    if !cc.is_zero() {
                        work.push((cc, w2));
                    }
                }
            }
            None => {
                // Normal form: at most one leading coefficient atom followed
                // by generators in nondecreasing order.
                let mut a = data.a_unit_id();
                let mut exps = vec![0u32; data.gen_count()];
                for atom in &w {
                    match atom {
                        Atom::Co(id) => a = id.clone(),
                        Atom::Gen(i) => exps[*i] += 1,
                    }
                }
                out.add_term(PbwMonomial { a, exps }, c);
            }
        }
    }
}

/// Normal form of a coefficient combination times a generator word, exposed
/// for the confluence checker.
pub(crate) fn normal_form(data: &RingData, parts: Vec<(Scalar, Vec<Atom>)>) -> Element {
    let mut out = Element::zero();
    for (c, w) in parts {
        normalize_word(data, c, w, &mut out);
    }
    out
}

/// Multiplies an `A`-basis combination into an element on the left.
pub fn comb_times_element(
    data: &RingData,
    comb: &[(ABasisId, Scalar)],
    e: &Element,
) -> Element {
    let mut out = Element::zero();
    for (id, c) in combine_comb(comb.to_vec()) {
        out = out.add(&Element::from_a_basis(data, id).mul(e, data).scale(&c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use crate::scalar::FieldKind;

    fn q() -> FieldKind {
        FieldKind::Rationals
    }

    #[test]
    fn dual_numbers_relation() {
        // (1#x)(e#1) = e#x + e#1 under the Euler action e^x = e.
        let data = presets::dual_numbers(q());
        let x = Element::generator(&data, 0);
        let eps = Element::from_a_basis(&data, ABasisId::Idx(1));
        let p = x.mul(&eps, &data);
        let mut expected = Element::from_monomial(
            PbwMonomial {
                a: ABasisId::Idx(1),
                exps: vec![1],
            },
            q().one(),
        );
        expected.add_term(
            PbwMonomial {
                a: ABasisId::Idx(1),
                exps: vec![0],
            },
            q().one(),
        );
        assert_eq!(p, expected);
    }

    #[test]
    fn heisenberg_sridharan_relation() {
        // With x < y < h, [x,y] = h and fhat(x,y) = 1:
        // (1#y)(1#x) = 1#xy - 1#h - 1#1.
        let data = presets::heisenberg_sridharan(q());
        let x = Element::generator(&data, 0);
        let y = Element::generator(&data, 1);
        let p = y.mul(&x, &data);
        let mut expected = Element::from_monomial(
            PbwMonomial {
                a: ABasisId::Idx(0),
                exps: vec![1, 1, 0],
            },
            q().one(),
        );
        expected.add_term(
            PbwMonomial {
                a: ABasisId::Idx(0),
                exps: vec![0, 0, 1],
            },
            q().integer(-1),
        );
        expected.add_term(
            PbwMonomial {
                a: ABasisId::Idx(0),
                exps: vec![0, 0, 0],
            },
            q().integer(-1),
        );
        assert_eq!(p, expected);
    }

    #[test]
    fn nilpotent_square_kills_product() {
        // (e#x)(e#x) = 0 in the dual-numbers fixture: moving x past e
        // produces e^2-terms and e*e^x = e^2 = 0.
        let data = presets::dual_numbers(q());
        let ex = Element::from_a_basis(&data, ABasisId::Idx(1))
            .mul(&Element::generator(&data, 0), &data);
        assert!(ex.mul(&ex, &data).is_zero());
    }

    #[test]
    fn commutators() {
        let data = presets::dual_numbers(q());
        let x = Element::generator(&data, 0);
        let eps = Element::from_a_basis(&data, ABasisId::Idx(1));
        assert_eq!(x.commutator(&eps, &data), eps);
        assert!(x.commutator(&x, &data).is_zero());

        // Weyl: [1#x, v#1] = v^x = 1.
        let weyl = presets::weyl(q());
        let x = Element::generator(&weyl, 0);
        let v = Element::from_a_basis(&weyl, ABasisId::Mono(vec![1]));
        assert_eq!(x.commutator(&v, &weyl), Element::one(&weyl));
    }

    #[test]
    fn filtration_degrees() {
        let data = presets::dual_numbers(q());
        assert_eq!(Element::one(&data).filtration_degree(&data), 0);
        let ex = Element::from_monomial(
            PbwMonomial {
                a: ABasisId::Idx(1),
                exps: vec![1],
            },
            q().one(),
        );
        assert_eq!(ex.filtration_degree(&data), 2);

        let weyl = presets::weyl(q());
        let m = Element::from_monomial(
            PbwMonomial {
                a: ABasisId::Mono(vec![2]),
                exps: vec![3],
            },
            q().one(),
        );
        assert_eq!(m.filtration_degree(&weyl), 5);
        assert!(Element::zero().filtration_degree(&weyl) == 0);
    }

    #[test]
    fn unit_laws_and_associativity_smoke() {
        let data = presets::heisenberg_sridharan(q());
        let one = Element::one(&data);
        let u = Element::generator(&data, 1).mul(&Element::generator(&data, 2), &data);
        assert_eq!(one.mul(&u, &data), u);
        assert_eq!(u.mul(&one, &data), u);
        let a = Element::generator(&data, 0);
        let b = Element::generator(&data, 1);
        let c = Element::generator(&data, 2);
        let ab_c = a.mul(&b, &data).mul(&c, &data);
        let a_bc = a.mul(&b.mul(&c, &data), &data);
        assert_eq!(ab_c, a_bc);
    }

    #[test]
    fn rendering() {
        let data = presets::dual_numbers(q());
        let e = Element::from_monomial(
            PbwMonomial {
                a: ABasisId::Idx(1),
                exps: vec![2],
            },
            q().integer(3),
        );
        assert_eq!(e.render(&data), "3*(e)#x^2");
        assert_eq!(Element::zero().render(&data), "0");
    }
}
