//! Independent re-validation of proof objects against the rule schemas.

use crate::logic::formula::{ilz_view, Formula, IlzView};
use crate::logic::prover::{Proof, Rule};
use crate::logic::sequent::{Calculus, Multiset, Sequent, Theory};

/// Checks every inference of `proof` against the rule schemas of the
/// calculus (plus the theory rules when a theory is supplied).  Returns the
/// description of the first bad inference.
pub fn check_proof(proof: &Proof, calc: Calculus, theory: Option<&Theory>) -> Result<(), String> {
    let at = |msg: String, seq: &Sequent| format!("{msg} (at {seq})");
    check_node(proof, calc, theory).map_err(|m| at(m, &proof.conclusion))?;
    Ok(())
}

fn os(seq: &Sequent) -> Result<&Multiset, String> {
    match seq {
        Sequent::OneSided { gamma } => Ok(gamma),
        _ => Err("expected a one-sided sequent".into()),
    }
}

fn ts(seq: &Sequent) -> Result<(&Multiset, Option<&Formula>), String> {
    match seq {
        Sequent::TwoSided { gamma, consequent } => Ok((gamma, consequent.as_ref())),
        _ => Err("expected a two-sided sequent".into()),
    }
}

fn premises<const N: usize>(p: &Proof) -> Result<[&Proof; N], String> {
    if p.premises.len() != N {
        return Err(format!("expected {N} premises, found {}", p.premises.len()));
    }
    let mut out = [p; N];
    for (slot, prem) in out.iter_mut().zip(p.premises.iter()) {
        *slot = prem;
    }
    Ok(out)
}

fn check_node(p: &Proof, calc: Calculus, theory: Option<&Theory>) -> Result<(), String> {
    check_rule(p, calc, theory)?;
    for prem in &p.premises {
        check_proof(prem, calc, theory)?;
    }
    Ok(())
}

#[allow(clippy::too_many_lines)]
fn check_rule(p: &Proof, calc: Calculus, theory: Option<&Theory>) -> Result<(), String> {
    let conc = &p.conclusion;
    match &p.rule {
        // ------------------------------------------------------- one-sided
        Rule::Init => {
            let g = os(conc)?;
            let fs: Vec<&Formula> = g.iter().collect();
            if fs.len() != 2 || *fs[1] != fs[0].dual() {
                return Err("init requires exactly a dual pair".into());
            }
            premises::<0>(p)?;
            Ok(())
        }
        Rule::OneAx => {
            let g = os(conc)?;
            if g.len() != 1 || !g.contains(&Formula::One) {
                return Err("the 1 axiom proves exactly ⊢ 1".into());
            }
            premises::<0>(p)?;
            Ok(())
        }
        Rule::TopAx => {
            let g = os(conc)?;
            if !g.contains(&Formula::Top) {
                return Err("no ⊤ in the conclusion".into());
            }
            premises::<0>(p)?;
            Ok(())
        }
        Rule::ParR(f) => {
            let g = os(conc)?;
            let (a, b) = match f {
                Formula::Par(a, b) => (a, b),
                _ => return Err("principal formula is not a ⅋".into()),
            };
            let [prem] = premises::<1>(p)?;
            let expect = g
                .remove(f)
                .ok_or("principal ⅋ not in the conclusion")?
                .insert((**a).clone())
                .insert((**b).clone());
            if *os(&prem.conclusion)? != expect {
                return Err("⅋ premise context mismatch".into());
            }
            Ok(())
        }
        Rule::TensorR(f) => {
            let g = os(conc)?;
            let (a, b) = match f {
                Formula::Tensor(a, b) => (a, b),
                _ => return Err("principal formula is not a ⊗".into()),
            };
            let [p1, p2] = premises::<2>(p)?;
            let rest = g.remove(f).ok_or("principal ⊗ not in the conclusion")?;
            let g1 = os(&p1.conclusion)?
                .remove(a)
                .ok_or("left ⊗ premise lacks the left component")?;
            let g2 = os(&p2.conclusion)?
                .remove(b)
                .ok_or("right ⊗ premise lacks the right component")?;
            if g1.union(&g2) != rest {
                return Err("⊗ premises do not partition the context".into());
            }
            Ok(())
        }
        Rule::BotR => {
            let g = os(conc)?;
            let [prem] = premises::<1>(p)?;
            let expect = g.remove(&Formula::Bot).ok_or("no ⊥ in the conclusion")?;
            if *os(&prem.conclusion)? != expect {
                return Err("⊥ premise context mismatch".into());
            }
            Ok(())
        }
        Rule::WithR(f) => {
            let g = os(conc)?;
            let (a, b) = match f {
                Formula::With(a, b) => (a, b),
                _ => return Err("principal formula is not a &".into()),
            };
            let [p1, p2] = premises::<2>(p)?;
            let rest = g.remove(f).ok_or("principal & not in the conclusion")?;
            if *os(&p1.conclusion)? != rest.insert((**a).clone())
                || *os(&p2.conclusion)? != rest.insert((**b).clone())
            {
                return Err("& premises must share the context".into());
            }
            Ok(())
        }
        Rule::PlusR1(f) | Rule::PlusR2(f) => {
            let g = os(conc)?;
            let (a, b) = match f {
                Formula::Plus(a, b) => (a, b),
                _ => return Err("principal formula is not a ⊕".into()),
            };
            let side = if matches!(p.rule, Rule::PlusR1(_)) { a } else { b };
            let [prem] = premises::<1>(p)?;
            let expect = g
                .remove(f)
                .ok_or("principal ⊕ not in the conclusion")?
                .insert((**side).clone());
            if *os(&prem.conclusion)? != expect {
                return Err("⊕ premise context mismatch".into());
            }
            Ok(())
        }
        Rule::Dereliction(f) | Rule::WeakLog(f) | Rule::ContrLog(f) => {
            if !calc.allows_exponentials() {
                return Err("exponential rule outside the fragment".into());
            }
            let g = os(conc)?;
            let a = match f {
                Formula::WhyNot(a) => a,
                _ => return Err("principal formula is not a ?".into()),
            };
            let [prem] = premises::<1>(p)?;
            let rest = g.remove(f).ok_or("principal ? not in the conclusion")?;
            let expect = match p.rule {
                Rule::Dereliction(_) => rest.insert((**a).clone()),
                Rule::WeakLog(_) => rest,
                _ => g.insert(f.clone()),
            };
            if *os(&prem.conclusion)? != expect {
                return Err("exponential premise mismatch".into());
            }
            Ok(())
        }
        Rule::Promotion(f) => {
            if !calc.allows_exponentials() {
                return Err("exponential rule outside the fragment".into());
            }
            let g = os(conc)?;
            let a = match f {
                Formula::OfCourse(a) => a,
                _ => return Err("principal formula is not a !".into()),
            };
            let rest = g.remove(f).ok_or("principal ! not in the conclusion")?;
            if !rest.iter().all(|x| x.is_why_not()) {
                return Err("promotion requires a ?-guarded context".into());
            }
            let [prem] = premises::<1>(p)?;
            if *os(&prem.conclusion)? != rest.insert((**a).clone()) {
                return Err("promotion premise mismatch".into());
            }
            Ok(())
        }
        Rule::StructW(f) => {
            if !calc.structural_weakening() {
                return Err("structural weakening not in this calculus".into());
            }
            let g = os(conc)?;
            let [prem] = premises::<1>(p)?;
            let expect = g.remove(f).ok_or("weakened formula not present")?;
            if *os(&prem.conclusion)? != expect {
                return Err("weakening premise mismatch".into());
            }
            Ok(())
        }
        Rule::StructC(f) => {
            if !calc.structural_contraction() {
                return Err("structural contraction not in this calculus".into());
            }
            let g = os(conc)?;
            if !g.contains(f) {
                return Err("contracted formula not present".into());
            }
            let [prem] = premises::<1>(p)?;
            if *os(&prem.conclusion)? != g.insert(f.clone()) {
                return Err("contraction premise mismatch".into());
            }
            Ok(())
        }
        Rule::TheoryAx(i) => {
            let t = theory.ok_or("theory axiom without a theory")?;
            let ax = t.axioms.get(*i).ok_or("axiom index out of range")?;
            if *conc != ax.sequent() {
                return Err("theory axiom sequent mismatch".into());
            }
            premises::<0>(p)?;
            Ok(())
        }
        Rule::DirectedCut(i) => {
            let t = theory.ok_or("directed cut without a theory")?;
            let ax = t.axioms.get(*i).ok_or("axiom index out of range")?;
            let [p1, p2] = premises::<2>(p)?;
            if p1.conclusion != ax.sequent() {
                return Err("directed cut's left premise must be the axiom".into());
            }
            let g = os(conc)?;
            let atoms: Vec<Formula> = ax
                .negated_atoms
                .iter()
                .map(|a| Formula::neg_atom(a))
                .collect();
            let delta = g
                .remove_all(&atoms)
                .ok_or("conclusion lacks the axiom's negated atoms")?;
            if *os(&p2.conclusion)? != delta.insert(ax.head.dual()) {
                return Err("directed cut premise mismatch".into());
            }
            Ok(())
        }
        // ------------------------------------------------------- two-sided
        Rule::InitI => {
            let (g, c) = ts(conc)?;
            let c = c.ok_or("init needs a consequent")?;
            if g.len() != 1 || !g.contains(c) {
                return Err("init proves exactly A ⊢ A".into());
            }
            premises::<0>(p)?;
            Ok(())
        }
        Rule::LImp(f) => {
            let (g, c) = ts(conc)?;
            let (a, b) = match ilz_view(f) {
                Some(IlzView::Imp(a, b)) => (a, b),
                _ => return Err("principal formula is not an implication".into()),
            };
            let [p1, p2] = premises::<2>(p)?;
            let rest = g.remove(f).ok_or("principal ⊸ not on the left")?;
            let (g1, c1) = ts(&p1.conclusion)?;
            if c1 != Some(&a) {
                return Err("left ⊸ premise must prove the antecedent".into());
            }
            let (g2, c2) = ts(&p2.conclusion)?;
            if c2 != c {
                return Err("right ⊸ premise consequent mismatch".into());
            }
            let g2less = g2
                .remove(&b)
                .ok_or("right ⊸ premise lacks the consequent-side hypothesis")?;
            if g1.union(&g2less) != rest {
                return Err("⊸ premises do not partition the context".into());
            }
            Ok(())
        }
        Rule::RImp => {
            let (g, c) = ts(conc)?;
            let c = c.ok_or("R⊸ needs a consequent")?;
            let (a, b) = match ilz_view(c) {
                Some(IlzView::Imp(a, b)) => (a, b),
                _ => return Err("consequent is not an implication".into()),
            };
            let [prem] = premises::<1>(p)?;
            let (g1, c1) = ts(&prem.conclusion)?;
            if c1 != Some(&b) || *g1 != g.insert(a) {
                return Err("R⊸ premise mismatch".into());
            }
            Ok(())
        }
        Rule::LTensor(f) => {
            let (g, c) = ts(conc)?;
            let (a, b) = match ilz_view(f) {
                Some(IlzView::Tensor(a, b)) => (a, b),
                _ => return Err("principal formula is not a ⊗".into()),
            };
            let [prem] = premises::<1>(p)?;
            let (g1, c1) = ts(&prem.conclusion)?;
            let expect = g.remove(f).ok_or("principal ⊗ not on the left")?.insert(a).insert(b);
            if c1 != c || *g1 != expect {
                return Err("L⊗ premise mismatch".into());
            }
            Ok(())
        }
        Rule::RTensor => {
            let (g, c) = ts(conc)?;
            let c = c.ok_or("R⊗ needs a consequent")?;
            let (a, b) = match ilz_view(c) {
                Some(IlzView::Tensor(a, b)) => (a, b),
                _ => return Err("consequent is not a ⊗".into()),
            };
            let [p1, p2] = premises::<2>(p)?;
            let (g1, c1) = ts(&p1.conclusion)?;
            let (g2, c2) = ts(&p2.conclusion)?;
            if c1 != Some(&a) || c2 != Some(&b) || g1.union(g2) != *g {
                return Err("R⊗ premises mismatch".into());
            }
            Ok(())
        }
        Rule::LBot => {
            let (g, c) = ts(conc)?;
            if c.is_some() || g.len() != 1 || !g.contains(&Formula::Bot) {
                return Err("L⊥ proves exactly ⊥ ⊢".into());
            }
            premises::<0>(p)?;
            Ok(())
        }
        Rule::RBot => {
            let (g, c) = ts(conc)?;
            if c != Some(&Formula::Bot) {
                return Err("R⊥ needs ⊥ as the consequent".into());
            }
            let [prem] = premises::<1>(p)?;
            let (g1, c1) = ts(&prem.conclusion)?;
            if c1.is_some() || g1 != g {
                return Err("R⊥ premise mismatch".into());
            }
            Ok(())
        }
        Rule::LOne => {
            let (g, c) = ts(conc)?;
            let [prem] = premises::<1>(p)?;
            let (g1, c1) = ts(&prem.conclusion)?;
            let expect = g.remove(&Formula::One).ok_or("no 1 on the left")?;
            if c1 != c || *g1 != expect {
                return Err("L1 premise mismatch".into());
            }
            Ok(())
        }
        Rule::ROne => {
            let (g, c) = ts(conc)?;
            if !g.is_empty() || c != Some(&Formula::One) {
                return Err("R1 proves exactly ⊢ 1".into());
            }
            premises::<0>(p)?;
            Ok(())
        }
        Rule::LPlus(f) => {
            let (g, c) = ts(conc)?;
            let (a, b) = match ilz_view(f) {
                Some(IlzView::Plus(a, b)) => (a, b),
                _ => return Err("principal formula is not a ⊕".into()),
            };
            let [p1, p2] = premises::<2>(p)?;
            let rest = g.remove(f).ok_or("principal ⊕ not on the left")?;
            let (g1, c1) = ts(&p1.conclusion)?;
            let (g2, c2) = ts(&p2.conclusion)?;
            if c1 != c || c2 != c || *g1 != rest.insert(a) || *g2 != rest.insert(b) {
                return Err("L⊕ premises mismatch".into());
            }
            Ok(())
        }
        Rule::RPlus1 | Rule::RPlus2 => {
            let (g, c) = ts(conc)?;
            let c = c.ok_or("R⊕ needs a consequent")?;
            let (a, b) = match ilz_view(c) {
                Some(IlzView::Plus(a, b)) => (a, b),
                _ => return Err("consequent is not a ⊕".into()),
            };
            let side = if matches!(p.rule, Rule::RPlus1) { a } else { b };
            let [prem] = premises::<1>(p)?;
            let (g1, c1) = ts(&prem.conclusion)?;
            if c1 != Some(&side) || g1 != g {
                return Err("R⊕ premise mismatch".into());
            }
            Ok(())
        }
        Rule::LWith1(f) | Rule::LWith2(f) => {
            let (g, c) = ts(conc)?;
            let (a, b) = match ilz_view(f) {
                Some(IlzView::With(a, b)) => (a, b),
                _ => return Err("principal formula is not a &".into()),
            };
            let side = if matches!(p.rule, Rule::LWith1(_)) { a } else { b };
            let [prem] = premises::<1>(p)?;
            let (g1, c1) = ts(&prem.conclusion)?;
            let expect = g.remove(f).ok_or("principal & not on the left")?.insert(side);
            if c1 != c || *g1 != expect {
                return Err("L& premise mismatch".into());
            }
            Ok(())
        }
        Rule::RWith => {
            let (g, c) = ts(conc)?;
            let c = c.ok_or("R& needs a consequent")?;
            let (a, b) = match ilz_view(c) {
                Some(IlzView::With(a, b)) => (a, b),
                _ => return Err("consequent is not a &".into()),
            };
            let [p1, p2] = premises::<2>(p)?;
            let (g1, c1) = ts(&p1.conclusion)?;
            let (g2, c2) = ts(&p2.conclusion)?;
            if c1 != Some(&a) || c2 != Some(&b) || g1 != g || g2 != g {
                return Err("R& premises mismatch".into());
            }
            Ok(())
        }
        Rule::RTop => {
            let (_, c) = ts(conc)?;
            if c != Some(&Formula::Top) {
                return Err("R⊤ needs ⊤ as the consequent".into());
            }
            premises::<0>(p)?;
            Ok(())
        }
        Rule::BangD(f) | Rule::BangW(f) | Rule::BangC(f) => {
            let (g, c) = ts(conc)?;
            let a = match f {
                Formula::OfCourse(a) => a,
                _ => return Err("principal formula is not a !".into()),
            };
            let [prem] = premises::<1>(p)?;
            let (g1, c1) = ts(&prem.conclusion)?;
            let rest = g.remove(f).ok_or("principal ! not on the left")?;
            let expect = match p.rule {
                Rule::BangD(_) => rest.insert((**a).clone()),
                Rule::BangW(_) => rest,
                _ => g.insert(f.clone()),
            };
            if c1 != c || *g1 != expect {
                return Err("! rule premise mismatch".into());
            }
            Ok(())
        }
        Rule::BangP => {
            let (g, c) = ts(conc)?;
            let c = c.ok_or("!P needs a consequent")?;
            let a = match ilz_view(c) {
                Some(IlzView::OfCourse(a)) => a,
                _ => return Err("consequent is not a !".into()),
            };
            if !g.iter().all(|x| x.is_of_course()) {
                return Err("!P requires a !-guarded context".into());
            }
            let [prem] = premises::<1>(p)?;
            let (g1, c1) = ts(&prem.conclusion)?;
            if c1 != Some(&a) || g1 != g {
                return Err("!P premise mismatch".into());
            }
            Ok(())
        }
        Rule::StructWI(f) => {
            if !calc.structural_weakening() {
                return Err("structural weakening not in this calculus".into());
            }
            let (g, c) = ts(conc)?;
            let [prem] = premises::<1>(p)?;
            let (g1, c1) = ts(&prem.conclusion)?;
            let expect = g.remove(f).ok_or("weakened formula not present")?;
            if c1 != c || *g1 != expect {
                return Err("weakening premise mismatch".into());
            }
            Ok(())
        }
        Rule::StructCI(f) => {
            if !calc.structural_contraction() {
                return Err("structural contraction not in this calculus".into());
            }
            let (g, c) = ts(conc)?;
            if !g.contains(f) {
                return Err("contracted formula not present".into());
            }
            let [prem] = premises::<1>(p)?;
            let (g1, c1) = ts(&prem.conclusion)?;
            if c1 != c || *g1 != g.insert(f.clone()) {
                return Err("contraction premise mismatch".into());
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decide::Answer;
    use crate::logic::prover::prove_bounded;

    #[test]
    fn prover_output_checks() {
        let seq = Sequent::one_sided(vec![Formula::atom("a"), Formula::neg_atom("a")]);
        let out = prove_bounded(&seq, Calculus::MALL, None, 4).unwrap();
        assert_eq!(out.answer, Answer::Yes);
        check_proof(&out.proof.unwrap(), Calculus::MALL, None).unwrap();
    }

    #[test]
    fn golden_proof_of_one_plus_a_with_bot() {
        // ⊢ 1 ⊕ a, ⊥: rules ⊥ then ⊕₁ then the 1 axiom
        let seq = Sequent::one_sided(vec![
            Formula::plus(Formula::One, Formula::atom("a")),
            Formula::Bot,
        ]);
        let out = prove_bounded(&seq, Calculus::MALL, None, 6).unwrap();
        assert_eq!(out.answer, Answer::Yes);
        let proof = out.proof.unwrap();
        check_proof(&proof, Calculus::MALL, None).unwrap();
    }

    #[test]
    fn corrupted_tensor_split_fails() {
        // build ⊢ a⊥, b⊥, a ⊗ b then corrupt the partition
        let t = Formula::tensor(Formula::atom("a"), Formula::atom("b"));
        let seq = Sequent::one_sided(vec![
            Formula::neg_atom("a"),
            Formula::neg_atom("b"),
            t.clone(),
        ]);
        let out = prove_bounded(&seq, Calculus::MALL, None, 6).unwrap();
        let mut proof = out.proof.unwrap();
        check_proof(&proof, Calculus::MALL, None).unwrap();
        // swap a premise context: move b⊥ into the left premise wrongly
        if let Rule::TensorR(_) = proof.rule {
            proof.premises[0].conclusion = Sequent::one_sided(vec![
                Formula::atom("a"),
                Formula::neg_atom("a"),
                Formula::neg_atom("b"),
            ]);
        }
        assert!(check_proof(&proof, Calculus::MALL, None).is_err());
    }

    #[test]
    fn structural_rules_are_fragment_gated() {
        let seq = Sequent::one_sided(vec![Formula::neg_atom("a"), Formula::One]);
        let out = prove_bounded(&seq, Calculus::LLW, None, 6).unwrap();
        let proof = out.proof.unwrap();
        check_proof(&proof, Calculus::LLW, None).unwrap();
        // the same proof is not an LL proof: it uses structural weakening
        assert!(check_proof(&proof, Calculus::LL, None).is_err());
    }
}
