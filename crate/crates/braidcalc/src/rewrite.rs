//! Bounded-degree noncommutative rewriting.
//!
//! Relations are oriented into rules "leading word -> strictly smaller
//! tensor" using the deg-lex greatest word as the lead. Overlap ambiguities
//! up to a degree bound are resolved diamond-lemma style; whatever fails to
//! resolve becomes a new rule. Once complete to degree N, normal forms of
//! degree <= N are unique and counting irreducible words per degree gives
//! the dimensions of the (associated graded) algebra.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{echelonize_unchecked, Tensor, Word};
use crate::presentation::AlgebraPresentation;

/// Oriented rewrite rules with a completion-degree marker.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    num_generators: usize,
    rules: BTreeMap<Word, Tensor>,
    completed_to: usize,
    /// Set when completion derived 1 = 0; the algebra is the zero ring.
    inconsistent: bool,
}

impl RewriteSystem {
    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn rules(&self) -> &BTreeMap<Word, Tensor> {
        &self.rules
    }

    pub fn completed_to(&self) -> usize {
        self.completed_to
    }

    pub fn is_inconsistent(&self) -> bool {
        self.inconsistent
    }

    /// Leftmost match of the shortest rule lead inside the word.
    fn find_match(&self, w: &Word) -> Option<(usize, Word)> {
        for pos in 0..w.len() {
            for lead in self.rules.keys() {
                let l = lead.len();
                if l == 0 || pos + l > w.len() {
                    continue;
                }
                if w.0[pos..pos + l] == lead.0[..] {
                    return Some((pos, lead.clone()));
                }
            }
        }
        None
    }

    /// Full normal form: rewrites the greatest reducible word first until
    /// no rule applies anywhere.
    pub fn reduce(&self, t: &Tensor) -> Tensor {
        let mut result = Tensor::zero();
        let mut work = t.clone();
        while let Some(w) = work.leading_word().cloned() {
            let c = work.coeff(&w);
            work.add_term(w.clone(), c.neg());
            match self.find_match(&w) {
                None => result.add_term(w, c),
                Some((pos, lead)) => {
                    let rhs = &self.rules[&lead];
                    let prefix = Word(w.0[..pos].to_vec());
                    let suffix = Word(w.0[pos + lead.len()..].to_vec());
                    for (rw, rc) in rhs.iter() {
                        work.add_term(prefix.concat(rw).concat(&suffix), c.mul(rc));
                    }
                }
            }
        }
        result
    }

    /// Like `reduce` but picks the smallest reducible word and the
    /// rightmost match; used to confirm normal forms are order-independent.
    pub fn reduce_rightmost(&self, t: &Tensor) -> Tensor {
        let mut work = t.clone();
        loop {
            let mut hit: Option<(Word, usize, Word)> = None;
            for (w, _) in work.iter() {
                let mut best: Option<(usize, Word)> = None;
                for pos in 0..w.len() {
                    for lead in self.rules.keys() {
                        let l = lead.len();
                        if l == 0 || pos + l > w.len() {
                            continue;
                        }
                        if w.0[pos..pos + l] == lead.0[..] {
                            best = Some((pos, lead.clone()));
                        }
                    }
                }
                if let Some((pos, lead)) = best {
                    hit = Some((w.clone(), pos, lead));
                    break;
                }
            }
            let Some((w, pos, lead)) = hit else {
                return work;
            };
            let c = work.coeff(&w);
            work.add_term(w.clone(), c.neg());
            let rhs = &self.rules[&lead];
            let prefix = Word(w.0[..pos].to_vec());
            let suffix = Word(w.0[pos + lead.len()..].to_vec());
            for (rw, rc) in rhs.iter() {
                work.add_term(prefix.concat(rw).concat(&suffix), c.mul(rc));
            }
        }
    }

    fn insert_polynomial(&mut self, p: &Tensor) {
        if p.is_zero() {
            return;
        }
        let lead = p.leading_word().unwrap().clone();
        if lead.is_empty() {
            self.inconsistent = true;
            return;
        }
        let lc = p.coeff(&lead);
        let monic = p.scale(&lc.inv().expect("nonzero leading coefficient"));
        let rhs = Tensor::word(lead.clone()).sub(&monic);
        self.rules.insert(lead, rhs);
    }

    fn interreduce(&mut self) {
        loop {
            let mut changed = false;
            let leads: Vec<Word> = self.rules.keys().cloned().collect();
            for lead in leads {
                let Some(rhs) = self.rules.remove(&lead) else {
                    continue;
                };
                let poly = Tensor::word(lead.clone()).sub(&rhs);
                let red = self.reduce(&poly);
                if red.is_zero() {
                    changed = true;
                    continue;
                }
                let new_lead = red.leading_word().unwrap().clone();
                if new_lead != lead || red != poly {
                    changed = true;
                }
                self.insert_polynomial(&red);
            }
            if !changed {
                break;
            }
        }
    }
}

/// Orients a presentation into a reduced rewrite system.
pub fn orient(p: &AlgebraPresentation) -> Result<RewriteSystem> {
    orient_tensors(
        &p.relations.iter().map(|r| r.full_tensor()).collect::<Vec<_>>(),
        p.num_generators(),
    )
}

/// Orients the quadratic parts only, dropping linear and constant terms.
pub fn orient_quadratic(p: &AlgebraPresentation) -> Result<RewriteSystem> {
    orient_tensors(
        &p.relations.iter().map(|r| r.quadratic.clone()).collect::<Vec<_>>(),
        p.num_generators(),
    )
}

fn orient_tensors(rows: &[Tensor], num_generators: usize) -> Result<RewriteSystem> {
    for (index, t) in rows.iter().enumerate() {
        if t.homogeneous_part(2).is_zero() && !t.is_zero() {
            return Err(Error::DegenerateRelation { index });
        }
    }
    let ech = echelonize_unchecked(rows, 2);
    let mut rs = RewriteSystem {
        num_generators,
        rules: BTreeMap::new(),
        completed_to: 2,
        inconsistent: false,
    };
    for (index, row) in ech.basis().iter().enumerate() {
        if row.leading_word().map_or(0, |w| w.len()) < 2 {
            return Err(Error::DegenerateRelation { index });
        }
        rs.insert_polynomial(row);
    }
    rs.interreduce();
    Ok(rs)
}

/// Resolves every overlap ambiguity of combined length <= max_degree,
/// recording unresolved remainders as new rules.
pub fn complete_to_degree(mut rs: RewriteSystem, max_degree: usize) -> RewriteSystem {
    assert!(max_degree >= 2, "completion degree must be at least 2");
    loop {
        let mut added = false;
        let leads: Vec<Word> = rs.rules.keys().cloned().collect();
        'scan: for u in &leads {
            for v in &leads {
                if !rs.rules.contains_key(u) || !rs.rules.contains_key(v) {
                    continue;
                }
                for o in 1..u.len().min(v.len()) {
                    if u.len() + v.len() - o > max_degree {
                        continue;
                    }
                    if u.0[u.len() - o..] != v.0[..o] {
                        continue;
                    }
                    // overlap word u * v[o..], reduced along both rules
                    let tail = Word(v.0[o..].to_vec());
                    let head = Word(u.0[..u.len() - o].to_vec());
                    let t1 = rs.reduce(&rs.rules[u].tensor(&Tensor::word(tail)));
                    let t2 = rs.reduce(&Tensor::word(head).tensor(&rs.rules[v]));
                    let d = t1.sub(&t2);
                    if !d.is_zero() {
                        rs.insert_polynomial(&d);
                        rs.interreduce();
                        added = true;
                        continue 'scan;
                    }
                }
            }
        }
        if !added {
            break;
        }
    }
    rs.completed_to = max_degree;
    rs
}

/// Counts irreducible words per degree 0..=max_degree by pruned search.
pub fn count_irreducible(rs: &RewriteSystem, max_degree: usize) -> Vec<usize> {
    if rs.inconsistent {
        return vec![0; max_degree + 1];
    }
    let mut dims = vec![0usize; max_degree + 1];
    let mut word: Vec<i32> = Vec::new();
    fn go(
        rs: &RewriteSystem,
        dims: &mut [usize],
        word: &mut Vec<i32>,
        g: usize,
        max_degree: usize,
    ) {
        dims[word.len()] += 1;
        if word.len() == max_degree {
            return;
        }
        for l in 0..g as i32 {
            word.push(l);
            let reducible = rs.rules.keys().any(|lead| {
                let ll = lead.len();
                ll >= 1 && ll <= word.len() && word[word.len() - ll..] == lead.0[..]
            });
            if !reducible {
                go(rs, dims, word, g, max_degree);
            }
            word.pop();
        }
    }
    go(rs, &mut dims, &mut word, rs.num_generators, max_degree);
    dims
}

/// Per-degree dimensions of the quadratic algebra (lower terms ignored).
pub fn graded_dims(p: &AlgebraPresentation, max_degree: usize) -> Result<Vec<usize>> {
    let rs = orient_quadratic(p)?;
    let rs = complete_to_degree(rs, max_degree);
    Ok(count_irreducible(&rs, max_degree))
}

/// Comparison of a quadratic-linear algebra against its quadratic part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimReport {
    /// Dimensions of the quadratic algebra, degrees 0..=N.
    pub quadratic: Vec<usize>,
    /// Dimensions of the associated graded of the filtered algebra.
    pub graded: Vec<usize>,
    pub pass: bool,
}

impl DimReport {
    pub fn verdict(&self) -> &'static str {
        if self.pass {
            "pass"
        } else {
            "fail"
        }
    }
}

/// Compares graded dimensions of the filtered algebra with its quadratic
/// part through the given degree; equality is the deformation property.
pub fn pbw_check(p: &AlgebraPresentation, max_degree: usize) -> Result<DimReport> {
    assert!(max_degree >= 3, "degree 3 is the first interesting degree");
    let quadratic = graded_dims(p, max_degree)?;
    let filtered = complete_to_degree(orient(p)?, max_degree);
    let graded = count_irreducible(&filtered, max_degree);
    debug_assert!(
        graded.iter().zip(&quadratic).all(|(g, q)| g <= q),
        "collapse can only shrink dimensions"
    );
    let pass = quadratic == graded;
    Ok(DimReport {
        quadratic,
        graded,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::all_words;
    use crate::presentation::{AlgebraPresentation, Relation};
    use crate::scalar::{rint, Scalar};
    use rand::Rng;
    use rand::SeedableRng;

    fn w(letters: &[i32]) -> Word {
        Word(letters.to_vec())
    }

    fn q() -> Scalar {
        Scalar::z()
    }

    /// xy - a yx = rhs_linear, generators x=0 < y=1.
    fn two_gen_presentation(a: Scalar) -> AlgebraPresentation {
        let quad = Tensor::word(w(&[0, 1])).sub(&Tensor::term(w(&[1, 0]), a));
        AlgebraPresentation::new(
            "two-gen",
            Some("q".into()),
            vec!["x".into(), "y".into()],
            vec![Relation::quadratic_only(quad)],
        )
        .unwrap()
    }

    /// xy - yx = z, yz - zy = x, zx - xz = y (classical so(3)-type).
    fn classical_su2_like() -> AlgebraPresentation {
        let rel = |u: i32, v: i32, lin: i32| {
            let quad = Tensor::word(w(&[u, v])).sub(&Tensor::word(w(&[v, u])));
            Relation::new(quad, Tensor::word(w(&[lin])).neg(), Scalar::zero())
        };
        AlgebraPresentation::new(
            "su2-like classical",
            None,
            vec!["x".into(), "y".into(), "z".into()],
            vec![rel(0, 1, 2), rel(1, 2, 0), rel(2, 0, 1)],
        )
        .unwrap()
    }

    /// Same quadratic shape with a broken Jacobi structure: b != a.
    fn broken_sl2_like() -> AlgebraPresentation {
        let rel = |u: i32, v: i32, coeff: Scalar, lin: i32| {
            let quad = Tensor::word(w(&[u, v])).sub(&Tensor::term(w(&[v, u]), coeff));
            Relation::new(quad, Tensor::word(w(&[lin])).neg(), Scalar::zero())
        };
        AlgebraPresentation::new(
            "broken",
            None,
            vec!["x".into(), "y".into(), "z".into()],
            vec![
                rel(0, 1, Scalar::one(), 0),
                rel(1, 2, Scalar::from_int(2), 2),
                rel(2, 0, Scalar::one(), 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn test_orient_single_relation() {
        let p = two_gen_presentation(q());
        let rs = orient(&p).unwrap();
        assert_eq!(rs.rules().len(), 1);
        // lead is the deg-lex greatest word yx
        let (lead, rhs) = rs.rules().iter().next().unwrap();
        assert_eq!(lead, &w(&[1, 0]));
        assert_eq!(rhs, &Tensor::term(w(&[0, 1]), q().inv().unwrap()));
    }

    #[test]
    fn test_orient_commutative() {
        let p = two_gen_presentation(Scalar::one());
        let rs = orient(&p).unwrap();
        assert_eq!(rs.rules().len(), 1);
    }

    #[test]
    fn test_orient_degenerate_specialization() {
        // quadratic coefficient (q-1) times the commutator: vanishes at q=1
        let quad = Tensor::word(w(&[0, 1]))
            .sub(&Tensor::word(w(&[1, 0])))
            .scale(&q().sub(&Scalar::one()));
        let p = AlgebraPresentation::new(
            "degenerate",
            Some("q".into()),
            vec!["x".into(), "y".into()],
            vec![Relation::new(
                quad,
                Tensor::word(w(&[0])).neg(),
                Scalar::zero(),
            )],
        )
        .unwrap();
        assert!(p.eval_at(&rint(1)).is_err());
        assert!(p.eval_at(&rint(2)).is_ok());
    }

    #[test]
    fn test_complete_classical_no_new_rules() {
        let p = classical_su2_like();
        let rs = orient(&p).unwrap();
        let n_before = rs.rules().len();
        let rs = complete_to_degree(rs, 3);
        assert_eq!(rs.rules().len(), n_before);
        let rs = complete_to_degree(rs, 4);
        assert_eq!(rs.rules().len(), n_before);
    }

    #[test]
    fn test_complete_broken_jacobi_collapses() {
        let p = broken_sl2_like();
        let rs = complete_to_degree(orient(&p).unwrap(), 3);
        assert!(rs.rules().len() > 3);
        let report = pbw_check(&p, 3).unwrap();
        assert!(!report.pass);
        // failure is monotone in the bound
        let report4 = pbw_check(&p, 4).unwrap();
        assert!(!report4.pass);
    }

    #[test]
    fn test_graded_dims_easy_form() {
        let rel = |u: i32, v: i32, c: Scalar| {
            Relation::quadratic_only(
                Tensor::word(w(&[u, v])).sub(&Tensor::term(w(&[v, u]), c)),
            )
        };
        let p = AlgebraPresentation::new(
            "easy",
            Some("q".into()),
            vec!["x".into(), "y".into(), "z".into()],
            vec![rel(0, 1, q()), rel(1, 2, q()), rel(2, 0, q())],
        )
        .unwrap();
        assert_eq!(graded_dims(&p, 3).unwrap(), vec![1, 3, 6, 10]);
    }

    #[test]
    fn test_graded_dims_free_algebra() {
        let p = AlgebraPresentation::new(
            "free",
            None,
            vec!["x".into(), "y".into()],
            vec![],
        )
        .unwrap();
        assert_eq!(graded_dims(&p, 3).unwrap(), vec![1, 2, 4, 8]);
    }

    #[test]
    fn test_graded_dims_generator_order_invariant() {
        let rel = |u: i32, v: i32, c: Scalar| {
            Relation::quadratic_only(
                Tensor::word(w(&[u, v])).sub(&Tensor::term(w(&[v, u]), c)),
            )
        };
        // same algebra with the roles of the three generators permuted
        let p1 = AlgebraPresentation::new(
            "a",
            Some("q".into()),
            vec!["x".into(), "y".into(), "z".into()],
            vec![rel(0, 1, q()), rel(1, 2, q()), rel(2, 0, q())],
        )
        .unwrap();
        let p2 = AlgebraPresentation::new(
            "b",
            Some("q".into()),
            vec!["z".into(), "x".into(), "y".into()],
            vec![rel(1, 2, q()), rel(2, 0, q()), rel(0, 1, q())],
        )
        .unwrap();
        assert_eq!(
            graded_dims(&p1, 3).unwrap(),
            graded_dims(&p2, 3).unwrap()
        );
    }

    #[test]
    fn test_pbw_check_classical_pass() {
        let report = pbw_check(&classical_su2_like(), 3).unwrap();
        assert!(report.pass);
        assert_eq!(report.quadratic, vec![1, 3, 6, 10]);
        assert_eq!(report.graded, vec![1, 3, 6, 10]);
    }

    #[test]
    fn test_normal_forms_unique_after_completion() {
        let p = classical_su2_like();
        let rs = complete_to_degree(orient(&p).unwrap(), 4);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let words = all_words(&[0, 1, 2], 3);
        for _ in 0..20 {
            let mut t = Tensor::zero();
            for _ in 0..4 {
                let i = rng.gen_range(0..words.len());
                let c = rng.gen_range(-3i64..=3);
                t.add_term(words[i].clone(), Scalar::from_int(c));
            }
            let a = rs.reduce(&t);
            let b = rs.reduce_rightmost(&t);
            assert_eq!(a, b);
            // already-reduced input is a fixed point
            assert_eq!(rs.reduce(&a), a);
        }
    }

    #[test]
    fn test_reduce_mixed_degree() {
        // normal ordering in the classical algebra keeps lower terms in sync
        let p = classical_su2_like();
        let rs = complete_to_degree(orient(&p).unwrap(), 3);
        // yx -> xy - z
        let nf = rs.reduce(&Tensor::word(w(&[1, 0])));
        let expect = Tensor::word(w(&[0, 1])).sub(&Tensor::word(w(&[2])));
        assert_eq!(nf, expect);
    }
}
