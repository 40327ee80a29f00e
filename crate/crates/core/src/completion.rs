//! Compositions, basis verification, bounded completion, inter-reduction and
//! folding of rule families into schemas.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;

use crate::error::{GsbError, Result};
use crate::field::{Field, Rational};
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::presentations::Presentation;
use crate::rewrite::{Origin, RewriteSystem, Rule, RuleRef, RuleSchema, DEFAULT_STEP_BUDGET};
use crate::word::{Alphabet, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CompositionKind {
    /// `w = f̄·b = a·ḡ` with the two leading words overlapping.
    Intersection,
    /// `w = f̄ = a·ḡ·b`.
    Inclusion,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionRecord<F: Field = Rational> {
    pub kind: CompositionKind,
    pub ambiguity: Word,
    pub left: RuleRef,
    pub right: RuleRef,
    /// `f·b - a·g` or `f - a·g·b`.
    pub raw: Polynomial<F>,
    /// `raw` reduced to normal form; `None` until evaluated or when the
    /// reduction ran out of budget.
    pub remainder: Option<Polynomial<F>>,
}

impl<F: Field> CompositionRecord<F> {
    pub fn is_trivial(&self) -> bool {
        matches!(&self.remainder, Some(r) if r.is_zero())
    }
}

/// All compositions of `f` with `g`: proper overlaps of a suffix of `f̄` with
/// a prefix of `ḡ`, and occurrences of `ḡ` inside `f̄`. Remainders are left
/// empty.
pub fn compositions<F: Field>(
    f: (RuleRef, &Rule<F>),
    g: (RuleRef, &Rule<F>),
) -> Vec<CompositionRecord<F>> {
    let (fref, f) = f;
    let (gref, g) = g;
    let (fl, gl) = (f.lhs.letters(), g.lhs.letters());
    let mut out = Vec::new();
    let fp = f.polynomial();
    let gp = g.polynomial();

    for k in 1..fl.len().min(gl.len()) {
        if fl[fl.len() - k..] == gl[..k] {
            let a = f.lhs.prefix(fl.len() - k);
            let b = g.lhs.suffix_from(k);
            let ambiguity = f.lhs.concat(&b);
            let raw = &fp.wrap(&Word::empty(), &b) - &gp.wrap(&a, &Word::empty());
            out.push(CompositionRecord {
                kind: CompositionKind::Intersection,
                ambiguity,
                left: fref,
                right: gref,
                raw,
                remainder: None,
            });
        }
    }

    if fref != gref && gl.len() <= fl.len() {
        for p in 0..=fl.len() - gl.len() {
            if fl[p..p + gl.len()] == *gl {
                let a = f.lhs.prefix(p);
                let b = f.lhs.suffix_from(p + gl.len());
                let raw = &fp - &gp.wrap(&a, &b);
                out.push(CompositionRecord {
                    kind: CompositionKind::Inclusion,
                    ambiguity: f.lhs.clone(),
                    left: fref,
                    right: gref,
                    raw,
                    remainder: None,
                });
            }
        }
    }
    out
}

/// Outcome of checking every composition among finite rules and schema
/// instances up to `schema_bound`.
#[derive(Clone, Debug)]
pub struct VerificationReport<F: Field = Rational> {
    pub schema_bound: u32,
    /// Every composition, sorted by ambiguity under the system's order.
    pub records: Vec<CompositionRecord<F>>,
    /// Indices into `records` whose remainder is nonzero.
    pub nontrivial: Vec<usize>,
    /// Indices into `records` whose reduction exceeded the step budget.
    pub inconclusive: Vec<usize>,
}

impl<F: Field> VerificationReport<F> {
    /// No nontrivial and no inconclusive compositions.
    pub fn certified(&self) -> bool {
        self.nontrivial.is_empty() && self.inconclusive.is_empty()
    }

    pub fn nontrivial_records(&self) -> impl Iterator<Item = &CompositionRecord<F>> {
        self.nontrivial.iter().map(|&i| &self.records[i])
    }
}

/// The finite rules of `sys` followed by every schema instance with exponent
/// at most `bound`.
fn instantiate<F: Field>(sys: &RewriteSystem<F>, bound: u32) -> Vec<(RuleRef, Rule<F>)> {
    let mut all: Vec<(RuleRef, Rule<F>)> = sys
        .rules()
        .iter()
        .enumerate()
        .map(|(i, r)| (RuleRef::Finite(i), r.clone()))
        .collect();
    for (index, schema) in sys.schemas().iter().enumerate() {
        for m in schema.m_min..=bound {
            all.push((RuleRef::Schema { index, m }, schema.instance(index, m)));
        }
    }
    all
}

/// Checks that every composition among the finite rules and the schema
/// instances with exponent at most `schema_bound` reduces to zero modulo the
/// full system. An empty nontrivial list certifies the system up to that
/// bound only.
pub fn verify_gsb<F: Field>(sys: &RewriteSystem<F>, schema_bound: u32) -> Result<VerificationReport<F>> {
    if let Some(s) = sys.schemas().iter().find(|s| s.m_min > schema_bound) {
        return Err(GsbError::Domain(format!(
            "schema bound {schema_bound} is below a schema's minimum exponent {}",
            s.m_min
        )));
    }
    let rules = instantiate(sys, schema_bound);
    for (_, rule) in &rules {
        rule.check_orientation(sys.order())?;
    }
    let mut records: Vec<CompositionRecord<F>> = Vec::new();
    for (fref, f) in &rules {
        for (gref, g) in &rules {
            records.extend(compositions((*fref, f), (*gref, g)));
        }
    }
    records.par_iter_mut().for_each(|rec| {
        rec.remainder = sys.normal_form(&rec.raw).ok();
    });
    let ord = sys.order();
    records.sort_by(|a, b| {
        ord.cmp_words(&a.ambiguity, &b.ambiguity)
            .then(a.left.cmp(&b.left))
            .then(a.right.cmp(&b.right))
            .then(a.kind.cmp(&b.kind))
    });
    let mut nontrivial = Vec::new();
    let mut inconclusive = Vec::new();
    for (i, rec) in records.iter().enumerate() {
        match &rec.remainder {
            None => inconclusive.push(i),
            Some(r) if !r.is_zero() => nontrivial.push(i),
            _ => {}
        }
    }
    Ok(VerificationReport {
        schema_bound,
        records,
        nontrivial,
        inconclusive,
    })
}

/// Verifies `sys` and returns it marked as certified when no composition
/// survives.
pub fn certify<F: Field>(sys: RewriteSystem<F>, schema_bound: u32) -> Result<(RewriteSystem<F>, VerificationReport<F>)> {
    let report = verify_gsb(&sys, schema_bound)?;
    let bound = report.certified().then_some(schema_bound);
    Ok((sys.with_certification(bound), report))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompletionCaps {
    pub max_deg: usize,
    pub max_rules: usize,
    pub max_rounds: usize,
    pub step_budget: usize,
}

impl Default for CompletionCaps {
    fn default() -> Self {
        CompletionCaps {
            max_deg: 12,
            max_rules: 500,
            max_rounds: 50,
            step_budget: DEFAULT_STEP_BUDGET,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompletionStatus {
    Stabilized,
    CapReached,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionReport {
    pub status: CompletionStatus,
    /// Which cap stopped the run, if any: `max_deg`, `max_rules` or
    /// `max_rounds`.
    pub cap: Option<&'static str>,
    /// Leading word and provenance of every rule added by a composition.
    pub added: Vec<(Word, Origin)>,
    /// Withheld remainders (leading word above `max_deg`) that are still
    /// nonzero modulo the final rules.
    pub pending: usize,
    pub max_deg: usize,
    /// Rule count after each round.
    pub history: Vec<usize>,
}

fn scratch_system<F: Field>(ord: &MonomialOrder, rules: Vec<Rule<F>>, budget: usize) -> Result<RewriteSystem<F>> {
    let alphabet = Alphabet::new((0..ord.num_letters()).map(|i| format!("l{i}")))?;
    Ok(RewriteSystem::new(alphabet, ord.clone(), rules, Vec::new())?.with_step_budget(budget))
}

fn sort_rules<F: Field>(rules: &mut [(Rule<F>, bool)], ord: &MonomialOrder) {
    rules.sort_by(|a, b| ord.cmp_words(&a.0.lhs, &b.0.lhs));
}

/// Inter-reduction keeping a freshness flag per rule; a rule whose
/// polynomial changes becomes fresh.
fn inter_reduce_tracked<F: Field>(
    rules: Vec<(Rule<F>, bool)>,
    ord: &MonomialOrder,
    budget: usize,
) -> Result<Vec<(Rule<F>, bool)>> {
    let mut queue = rules;
    let mut basis: Vec<(Rule<F>, bool)> = Vec::new();
    while !queue.is_empty() {
        sort_rules(&mut queue, ord);
        let (rule, fresh) = queue.remove(0);
        let sys = scratch_system(ord, basis.iter().map(|(r, _)| r.clone()).collect(), budget)?;
        let p = sys.normal_form(&rule.polynomial())?;
        if p.is_zero() {
            continue;
        }
        let monic = p.make_monic(ord)?;
        let unchanged = monic == rule.polynomial();
        let next = if unchanged {
            rule
        } else {
            let origin = if monic.leading(ord)?.0 == rule.lhs {
                rule.origin.clone()
            } else {
                Origin::Reduction { from: rule.lhs.clone() }
            };
            Rule::from_polynomial(&monic, ord, origin)?
        };
        let mut kept = Vec::with_capacity(basis.len());
        for entry in basis.drain(..) {
            if entry.0.lhs.contains_factor(&next.lhs) {
                queue.push(entry);
            } else {
                kept.push(entry);
            }
        }
        basis = kept;
        basis.push((next, fresh || !unchanged));
    }
    let sys = scratch_system(ord, basis.iter().map(|(r, _)| r.clone()).collect(), budget)?;
    let mut out = Vec::with_capacity(basis.len());
    for (mut rule, fresh) in basis {
        let rhs = sys.normal_form(&rule.rhs)?;
        let changed = rhs != rule.rhs;
        rule.rhs = rhs;
        out.push((rule, fresh || changed));
    }
    sort_rules(&mut out, ord);
    Ok(out)
}

/// Removes rules whose leading word contains another leading word, folding
/// their polynomials back in, and reduces every right-hand side.
pub fn inter_reduce<F: Field>(rules: Vec<Rule<F>>, ord: &MonomialOrder) -> Result<Vec<Rule<F>>> {
    let tracked = rules.into_iter().map(|r| (r, false)).collect();
    Ok(inter_reduce_tracked(tracked, ord, DEFAULT_STEP_BUDGET)?
        .into_iter()
        .map(|(r, _)| r)
        .collect())
}

/// Bounded Shirshov completion of a presentation.
///
/// Compositions are processed smallest ambiguity first; each nonzero
/// remainder becomes a new monic rule unless its leading word is longer
/// than `max_deg`, in which case it is withheld. The rule set is
/// inter-reduced after every round and only pairs involving a fresh rule are
/// re-examined.
pub fn complete<F: Field>(
    pres: &Presentation<F>,
    caps: CompletionCaps,
) -> Result<(RewriteSystem<F>, CompletionReport)> {
    let ord = pres.order().clone();
    let mut seeds = Vec::new();
    for (lhs, rhs) in pres.relations() {
        let p = lhs - rhs;
        if p.is_zero() {
            continue;
        }
        seeds.push((Rule::from_polynomial(&p, &ord, Origin::Input)?, true));
    }
    let mut rules = inter_reduce_tracked(seeds, &ord, caps.step_budget)?;
    let mut withheld: Vec<Polynomial<F>> = Vec::new();
    let mut withheld_seen: HashSet<Polynomial<F>> = HashSet::new();
    let mut added = Vec::new();
    let mut history = Vec::new();
    let mut cap = None;

    for round in 0.. {
        if round >= caps.max_rounds {
            cap = Some("max_rounds");
            break;
        }
        let mut records = Vec::new();
        for (i, (f, ff)) in rules.iter().enumerate() {
            for (j, (g, gf)) in rules.iter().enumerate() {
                if *ff || *gf {
                    records.extend(compositions((RuleRef::Finite(i), f), (RuleRef::Finite(j), g)));
                }
            }
        }
        records.sort_by(|a, b| ord.cmp_words(&a.ambiguity, &b.ambiguity));
        let names: Vec<Word> = rules.iter().map(|(r, _)| r.lhs.clone()).collect();
        for entry in rules.iter_mut() {
            entry.1 = false;
        }

        let mut new_in_round = 0usize;
        let mut sys = scratch_system(&ord, rules.iter().map(|(r, _)| r.clone()).collect(), caps.step_budget)?;
        for rec in records {
            let rem = sys.normal_form(&rec.raw)?;
            if rem.is_zero() {
                continue;
            }
            let origin = Origin::Composition {
                left: rule_name(&names, rec.left),
                right: rule_name(&names, rec.right),
                ambiguity: rec.ambiguity.clone(),
            };
            let rule = Rule::from_polynomial(&rem, &ord, origin)?;
            if rule.lhs.len() > caps.max_deg {
                let monic = rem.make_monic(&ord)?;
                if withheld_seen.insert(monic.clone()) {
                    withheld.push(monic);
                }
                continue;
            }
            added.push((rule.lhs.clone(), rule.origin.clone()));
            rules.push((rule, true));
            new_in_round += 1;
            sys = scratch_system(&ord, rules.iter().map(|(r, _)| r.clone()).collect(), caps.step_budget)?;
            if rules.len() > caps.max_rules {
                break;
            }
        }
        rules = inter_reduce_tracked(rules, &ord, caps.step_budget)?;
        history.push(rules.len());
        if rules.len() > caps.max_rules {
            cap = Some("max_rules");
            break;
        }
        if new_in_round == 0 {
            break;
        }
    }

    let final_rules: Vec<Rule<F>> = rules.into_iter().map(|(r, _)| r).collect();
    let sys = RewriteSystem::new(pres.alphabet().clone(), ord.clone(), final_rules, Vec::new())?
        .with_step_budget(caps.step_budget);
    let mut pending = 0;
    for p in &withheld {
        if !sys.normal_form(p)?.is_zero() {
            pending += 1;
        }
    }
    if cap.is_none() && pending > 0 {
        cap = Some("max_deg");
    }
    let status = if cap.is_none() {
        CompletionStatus::Stabilized
    } else {
        CompletionStatus::CapReached
    };
    Ok((
        sys,
        CompletionReport {
            status,
            cap,
            added,
            pending,
            max_deg: caps.max_deg,
            history,
        },
    ))
}

fn rule_name(names: &[Word], r: RuleRef) -> Word {
    match r {
        RuleRef::Finite(i) => names[i].clone(),
        RuleRef::Schema { .. } => Word::empty(),
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct FamilyKey {
    prefix: Word,
    block: Word,
    suffix: Word,
    rhs_prefix: Word,
    rhs_block: Word,
    rhs_suffix: Word,
}

/// Ways to write `v` as `P'·B'^m·S'`. An empty `B'` is represented once, as
/// `P' = v`.
fn rhs_splits(v: &Word, m: usize) -> Vec<(Word, Word, Word)> {
    let mut out = vec![(v.clone(), Word::empty(), Word::empty())];
    let t = v.letters();
    for p in 0..t.len() {
        for len in 1..=(t.len() - p) / m {
            let block = &t[p..p + len];
            if (1..m).all(|i| &t[p + i * len..p + (i + 1) * len] == block) {
                out.push((
                    v.prefix(p),
                    Word::from_letters(block.to_vec()),
                    v.suffix_from(p + m * len),
                ));
            }
        }
    }
    out
}

/// Detects families `P·B^m·S -> P'·B'^m·S'` among monic binomial rules with
/// at least three consecutive exponents and folds each into a schema.
/// Returns the schemas and the rules left unfolded. The folded system is not
/// certified by this step.
pub fn infer_schemas<F: Field>(rules: Vec<Rule<F>>) -> (Vec<RuleSchema>, Vec<Rule<F>>) {
    let mut remaining = rules;
    let mut schemas = Vec::new();
    loop {
        let mut families: HashMap<FamilyKey, BTreeMap<u32, usize>> = HashMap::new();
        for (idx, rule) in remaining.iter().enumerate() {
            let Some(v) = rule.rhs_word() else { continue };
            let u = rule.lhs.letters();
            for p in 0..u.len() {
                for len in 1..=u.len() - p {
                    let block = &u[p..p + len];
                    let mut m = 1;
                    loop {
                        let end = p + m * len;
                        let key_base = (rule.lhs.prefix(p), Word::from_letters(block.to_vec()), rule.lhs.suffix_from(end));
                        for (rp, rb, rs) in rhs_splits(v, m) {
                            let key = FamilyKey {
                                prefix: key_base.0.clone(),
                                block: key_base.1.clone(),
                                suffix: key_base.2.clone(),
                                rhs_prefix: rp,
                                rhs_block: rb,
                                rhs_suffix: rs,
                            };
                            families.entry(key).or_default().insert(m as u32, idx);
                        }
                        if end + len <= u.len() && &u[end..end + len] == block {
                            m += 1;
                        } else {
                            break;
                        }
                    }
                }
            }
        }

        let mut best: Option<(FamilyKey, u32, u32)> = None;
        let score = |k: &FamilyKey, lo: u32, hi: u32| {
            (
                hi - lo,
                std::cmp::Reverse(k.prefix.len() + k.suffix.len()),
                std::cmp::Reverse(k.block.len()),
                std::cmp::Reverse(lo),
            )
        };
        let mut keys: Vec<&FamilyKey> = families.keys().collect();
        // Deterministic tie-breaking independent of hash order.
        keys.sort_by(|a, b| {
            (&a.prefix, &a.block, &a.suffix, &a.rhs_prefix, &a.rhs_block, &a.rhs_suffix)
                .cmp(&(&b.prefix, &b.block, &b.suffix, &b.rhs_prefix, &b.rhs_block, &b.rhs_suffix))
        });
        for key in keys {
            let exps: Vec<u32> = families[key].keys().copied().collect();
            let mut start = 0;
            for i in 1..=exps.len() {
                if i == exps.len() || exps[i] != exps[i - 1] + 1 {
                    let (lo, hi) = (exps[start], exps[i - 1]);
                    if hi - lo >= 2 {
                        let better = match &best {
                            None => true,
                            Some((bk, blo, bhi)) => score(key, lo, hi) > score(bk, *blo, *bhi),
                        };
                        if better {
                            best = Some((key.clone(), lo, hi));
                        }
                    }
                    start = i;
                }
            }
        }

        let Some((key, lo, hi)) = best else { break };
        let fold: HashSet<usize> = (lo..=hi).map(|m| families[&key][&m]).collect();
        remaining = remaining
            .into_iter()
            .enumerate()
            .filter(|(i, _)| !fold.contains(i))
            .map(|(_, r)| r)
            .collect();
        schemas.push(RuleSchema {
            prefix: key.prefix,
            block: key.block,
            suffix: key.suffix,
            rhs_prefix: key.rhs_prefix,
            rhs_block: key.rhs_block,
            rhs_suffix: key.rhs_suffix,
            m_min: lo,
        });
    }
    (schemas, remaining)
}
