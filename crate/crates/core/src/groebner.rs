//! Buchberger's algorithm, normal forms and standard monomials.
//!
//! Orderings are weighted-degree orderings refined by a lexicographic
//! comparison along a user-chosen variable precedence.

use std::cmp::Ordering;
use std::sync::Arc;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::exactpoly::{find_weights, Monomial, Polynomial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderingKind {
    GradedLex,
    WeightedGradedLex,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroebnerError {
    #[error("weighted ordering needs {expected} positive weights, got {found:?}")]
    BadWeights { expected: usize, found: Vec<u64> },
    #[error("precedence must be a permutation of 0..{0}")]
    BadPrecedence(usize),
    #[error("variable sets differ: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),
    #[error("no nonzero generators")]
    NoGenerators,
}

/// A monomial ordering: weighted degree first, ties broken lexicographically
/// with `precedence[0]` the largest variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialOrdering {
    kind: OrderingKind,
    weights: Option<Vec<u64>>,
    precedence: Vec<usize>,
}

impl MonomialOrdering {
    pub fn new(
        kind: OrderingKind,
        weights: Option<Vec<u64>>,
        precedence: Vec<usize>,
    ) -> Result<Self, GroebnerError> {
        let n = precedence.len();
        let mut seen = vec![false; n];
        for &p in &precedence {
            if p >= n || seen[p] {
                return Err(GroebnerError::BadPrecedence(n));
            }
            seen[p] = true;
        }
        match (&kind, &weights) {
            (OrderingKind::WeightedGradedLex, Some(w)) if w.len() == n && w.iter().all(|&x| x > 0) => {}
            (OrderingKind::WeightedGradedLex, w) => {
                return Err(GroebnerError::BadWeights {
                    expected: n,
                    found: w.clone().unwrap_or_default(),
                })
            }
            (OrderingKind::GradedLex, _) => {}
        }
        let weights = match kind {
            OrderingKind::GradedLex => None,
            OrderingKind::WeightedGradedLex => weights,
        };
        Ok(MonomialOrdering {
            kind,
            weights,
            precedence,
        })
    }

    /// Precedence with the last listed variable largest.
    pub fn last_largest(n: usize) -> Vec<usize> {
        (0..n).rev().collect()
    }

    pub fn graded_lex(n: usize) -> Self {
        Self::new(OrderingKind::GradedLex, None, Self::last_largest(n)).expect("valid")
    }

    pub fn weighted(weights: Vec<u64>) -> Result<Self, GroebnerError> {
        let n = weights.len();
        Self::new(OrderingKind::WeightedGradedLex, Some(weights), Self::last_largest(n))
    }

    /// Weighted ordering from the polynomial's own weights when it is
    /// quasi-homogeneous, graded-lex otherwise; last variable largest.
    pub fn default_for(f: &Polynomial) -> Self {
        match find_weights(f) {
            Some(w) => Self::weighted(w.weights).expect("positive weights"),
            None => Self::graded_lex(f.nvars()),
        }
    }

    pub fn with_precedence(mut self, precedence: Vec<usize>) -> Result<Self, GroebnerError> {
        self.precedence = precedence;
        Self::new(self.kind, self.weights, self.precedence)
    }

    pub fn kind(&self) -> OrderingKind {
        self.kind
    }

    pub fn weights(&self) -> Option<&[u64]> {
        self.weights.as_deref()
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    pub fn nvars(&self) -> usize {
        self.precedence.len()
    }

    pub fn degree(&self, m: &Monomial) -> u64 {
        match &self.weights {
            Some(w) => m.weighted_degree(w),
            None => m.degree() as u64,
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.degree(a).cmp(&self.degree(b)).then_with(|| {
            let (ea, eb) = (a.exponents(), b.exponents());
            for &v in &self.precedence {
                match ea[v].cmp(&eb[v]) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }

    pub fn leading_term<'a>(&self, p: &'a Polynomial) -> Option<(&'a Monomial, &'a Rational)> {
        p.terms().max_by(|a, b| self.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, p: &Polynomial) -> Option<Monomial> {
        self.leading_term(p).map(|(m, _)| m.clone())
    }

    /// Scales `p` so its leading coefficient is one.
    pub fn make_monic(&self, p: &Polynomial) -> Polynomial {
        match self.leading_term(p) {
            Some((_, c)) if !c.is_one() => p.scale(&c.recip()),
            _ => p.clone(),
        }
    }
}

/// A reduced Gröbner basis: monic generators, no leading monomial dividing
/// another, tails fully reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ordering: MonomialOrdering,
    vars: Arc<[String]>,
    generators: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ordering(&self) -> &MonomialOrdering {
        &self.ordering
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators
            .iter()
            .filter_map(|g| self.ordering.leading_monomial(g))
            .collect()
    }

    /// Fully reduced remainder of `p`; zero iff `p` lies in the ideal.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial, GroebnerError> {
        if p.vars() != &self.vars {
            return Err(GroebnerError::VariableMismatch(
                p.vars().to_vec(),
                self.vars.to_vec(),
            ));
        }
        let leads: Vec<(Monomial, &Polynomial)> = self
            .generators
            .iter()
            .map(|g| (self.ordering.leading_monomial(g).expect("nonzero"), g))
            .collect();
        Ok(reduce(p, &leads, &self.ordering))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Monomials outside the leading-term ideal, ascending in the ordering;
    /// `None` when there are infinitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        let n = self.vars.len();
        let leads = self.leading_monomials();
        if leads.iter().any(Monomial::is_one) {
            return Some(Vec::new());
        }
        let mut bounds = vec![None; n];
        for m in &leads {
            let e = m.exponents();
            let nz: Vec<usize> = (0..n).filter(|&i| e[i] > 0).collect();
            if let [i] = nz[..] {
                let b: &mut Option<u32> = &mut bounds[i];
                *b = Some(b.map_or(e[i], |x| x.min(e[i])));
            }
        }
        let bounds: Vec<u32> = bounds.into_iter().collect::<Option<_>>()?;
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        loop {
            let m = Monomial::new(exps.clone());
            if !leads.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            let mut i = 0;
            loop {
                if i == n {
                    out.sort_by(|a, b| self.ordering.cmp(a, b));
                    return Some(out);
                }
                exps[i] += 1;
                if exps[i] >= bounds[i] {
                    exps[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }

    /// Finite quotient in which every variable is nilpotent, so the
    /// polynomial quotient equals the local one.
    pub fn is_local_zero_dimensional(&self) -> bool {
        let Some(sm) = self.standard_monomials() else {
            return false;
        };
        let dim = sm.len();
        if dim == 0 {
            return false;
        }
        (0..self.vars.len()).all(|i| self.is_nilpotent(&Polynomial::var(self.vars.clone(), i), dim))
    }

    /// Whether `p^k` reduces to zero for some `k <= bound`, by repeated squaring.
    pub fn is_nilpotent(&self, p: &Polynomial, bound: usize) -> bool {
        let mut x = self.normal_form(p).expect("same variables");
        let mut e = 1usize;
        while !x.is_zero() {
            if e >= bound.max(1) {
                return false;
            }
            x = self.normal_form(&(&x * &x)).expect("same variables");
            e *= 2;
        }
        true
    }
}

fn reduce(p: &Polynomial, leads: &[(Monomial, &Polynomial)], ord: &MonomialOrdering) -> Polynomial {
    let mut rest = p.clone();
    let mut rem = Polynomial::zero(p.vars().clone());
    while let Some((m, c)) = ord.leading_term(&rest) {
        let (m, c) = (m.clone(), c.clone());
        let divisor = leads.iter().find_map(|(l, g)| l.quotient_of(&m).map(|q| (q, *g, l)));
        match divisor {
            Some((q, g, l)) => {
                let lc = g.coefficient(l);
                rest = &rest - &g.times_term(&q, &(&c / &lc));
            }
            None => {
                rem.add_term(m.clone(), c.clone());
                rest.add_term(m, -c);
            }
        }
    }
    rem
}

/// Reduced Gröbner basis of the ideal generated by `generators`.
pub fn buchberger(
    generators: &[Polynomial],
    ordering: &MonomialOrdering,
) -> Result<GroebnerBasis, GroebnerError> {
    let gens: Vec<Polynomial> = generators.iter().filter(|g| !g.is_zero()).cloned().collect();
    let Some(first) = gens.first() else {
        return Err(GroebnerError::NoGenerators);
    };
    let vars = first.vars().clone();
    if let Some(g) = gens.iter().find(|g| g.vars() != &vars) {
        return Err(GroebnerError::VariableMismatch(g.vars().to_vec(), vars.to_vec()));
    }
    if ordering.nvars() != vars.len() {
        return Err(GroebnerError::BadPrecedence(vars.len()));
    }
    let ord = ordering;
    let mut basis: Vec<(Monomial, Polynomial)> = Vec::new();
    let mut pairs: Vec<(usize, usize, Monomial)> = Vec::new();

    let add = |basis: &mut Vec<(Monomial, Polynomial)>,
                   pairs: &mut Vec<(usize, usize, Monomial)>,
                   g: Polynomial| {
        let g = ord.make_monic(&g);
        let lm = ord.leading_monomial(&g).expect("nonzero");
        let k = basis.len();
        for (i, (li, _)) in basis.iter().enumerate() {
            pairs.push((i, k, li.lcm(&lm)));
        }
        basis.push((lm, g));
    };

    for g in gens {
        let leads: Vec<(Monomial, &Polynomial)> = basis.iter().map(|(l, p)| (l.clone(), p)).collect();
        let r = reduce(&g, &leads, ord);
        if !r.is_zero() {
            add(&mut basis, &mut pairs, r);
        }
    }

    while !pairs.is_empty() {
        // normal strategy: smallest lcm first
        let idx = (0..pairs.len())
            .min_by(|&a, &b| ord.cmp(&pairs[a].2, &pairs[b].2))
            .expect("nonempty");
        let (i, j, lcm) = pairs.swap_remove(idx);
        let (li, gi) = &basis[i];
        let (lj, gj) = &basis[j];
        if li.mul(lj) == lcm {
            continue; // coprime leading monomials
        }
        let s = &gi.times_term(&li.quotient_of(&lcm).expect("divides"), &Rational::one())
            - &gj.times_term(&lj.quotient_of(&lcm).expect("divides"), &Rational::one());
        let leads: Vec<(Monomial, &Polynomial)> = basis.iter().map(|(l, p)| (l.clone(), p)).collect();
        let r = reduce(&s, &leads, ord);
        if !r.is_zero() {
            add(&mut basis, &mut pairs, r);
        }
    }

    // minimalize
    let mut minimal: Vec<(Monomial, Polynomial)> = Vec::new();
    for (idx, (l, g)) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(k, (lk, _))| {
            k != idx && lk.divides(l) && (lk != l || k < idx)
        });
        if !redundant {
            minimal.push((l.clone(), g.clone()));
        }
    }
    // interreduce tails
    let mut reduced = Vec::with_capacity(minimal.len());
    for (idx, (l, g)) in minimal.iter().enumerate() {
        let others: Vec<(Monomial, &Polynomial)> = minimal
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != idx)
            .map(|(_, (lk, gk))| (lk.clone(), gk))
            .collect();
        let lc = g.coefficient(l);
        let mut tail = g.clone();
        tail.add_term(l.clone(), -lc);
        let tail = reduce(&tail, &others, ord);
        let mut out = tail;
        out.add_term(l.clone(), Rational::one());
        reduced.push(out);
    }
    reduced.sort_by(|a, b| {
        ord.cmp(
            &ord.leading_monomial(a).expect("nonzero"),
            &ord.leading_monomial(b).expect("nonzero"),
        )
    });
    Ok(GroebnerBasis {
        ordering: ord.clone(),
        vars,
        generators: reduced,
    })
}

/// S-polynomial of two nonzero polynomials.
pub fn s_polynomial(a: &Polynomial, b: &Polynomial, ord: &MonomialOrdering) -> Polynomial {
    let (la, ca) = ord.leading_term(a).expect("nonzero");
    let (lb, cb) = ord.leading_term(b).expect("nonzero");
    let l = la.lcm(lb);
    &a.times_term(&la.quotient_of(&l).expect("divides"), &ca.recip())
        - &b.times_term(&lb.quotient_of(&l).expect("divides"), &cb.recip())
}

/// Checks the defining properties of a reduced Gröbner basis.
pub fn is_reduced_groebner(gb: &GroebnerBasis) -> bool {
    let ord = gb.ordering();
    let gens = gb.generators();
    let leads = gb.leading_monomials();
    let monic = gens
        .iter()
        .all(|g| ord.leading_term(g).is_some_and(|(_, c)| c.is_one()));
    let minimal = leads
        .iter()
        .enumerate()
        .all(|(i, a)| leads.iter().enumerate().all(|(j, b)| i == j || !a.divides(b)));
    let tails_reduced = gens.iter().zip(&leads).all(|(g, l)| {
        g.terms()
            .filter(|(m, _)| *m != l)
            .all(|(m, _)| !leads.iter().any(|k| k.divides(m)))
    });
    let s_pairs = (0..gens.len()).all(|i| {
        (i + 1..gens.len()).all(|j| {
            gb.normal_form(&s_polynomial(&gens[i], &gens[j], ord))
                .map(|r| r.is_zero())
                .unwrap_or(false)
        })
    });
    monic && minimal && tails_reduced && s_pairs
}
