//! Integrability and unitarity verdicts for degree-1 modules, read off the
//! case tables of the classification theorems.
//!
//! Matching is literal: a label integrates when it, or the module it is the
//! contragredient of, matches one of the listed tuples.

mod dictionary;
mod label;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::GaussRational;

pub use dictionary::{dimension, finite_dimensional_p, hw_to_label, label_to_hw};
pub use label::{parse_affine, Affine, Family, LabelForm, ModuleLabel, Symbol, SymbolDomain};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RealFormId {
    /// Universal cover of `SU(p,q)`; complexification `sl(p+q)`.
    SuPq { p: usize, q: usize },
    /// Universal cover of `SL(m,ℝ)`, `m ≥ 3`.
    SlR { m: usize },
    /// Universal cover of `Sp(n,ℝ)`.
    SpR { n: usize },
    /// Universal cover of `Sp(p,q)`.
    SpPq { p: usize, q: usize },
}

impl RealFormId {
    /// Builds a form from CLI-style parts: `su`/`sppq` take `p`,`q`; `sl`/`spr` take `n`.
    pub fn from_parts(name: &str, p: Option<usize>, q: Option<usize>, n: Option<usize>) -> Result<Self> {
        let need = |v: Option<usize>, what: &str| v.ok_or_else(|| Error::InvalidForm(format!("{name} needs --{what}")));
        let form = match name.to_ascii_lowercase().as_str() {
            "su" | "su_pq" => RealFormId::SuPq { p: need(p, "p")?, q: need(q, "q")? },
            "sl" | "sl_n_r" => RealFormId::SlR { m: need(n, "n")? },
            "spr" | "sp_n_r" => RealFormId::SpR { n: need(n, "n")? },
            "sppq" | "sp_pq" => RealFormId::SpPq { p: need(p, "p")?, q: need(q, "q")? },
            _ => return Err(Error::InvalidForm(format!("unknown real form '{name}'"))),
        };
        form.validate()?;
        Ok(form)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            RealFormId::SuPq { p, q } if p == 0 || q == 0 || p + q < 3 => Err(Error::InvalidForm(format!(
                "SU({p},{q}) needs p, q ≥ 1 and rank p+q−1 ≥ 2"
            ))),
            RealFormId::SlR { m } if m < 3 => Err(Error::InvalidForm(format!("SL({m},R) needs m ≥ 3"))),
            RealFormId::SpR { n: 0 } => Err(Error::InvalidForm("Sp(0,R) is trivial".into())),
            RealFormId::SpPq { p, q } if p == 0 || q == 0 => Err(Error::InvalidForm(format!("Sp({p},{q}) needs p, q ≥ 1"))),
            _ => Ok(()),
        }
    }

    /// Rank of the complexified Lie algebra.
    pub fn rank(&self) -> usize {
        match *self {
            RealFormId::SuPq { p, q } => p + q - 1,
            RealFormId::SlR { m } => m - 1,
            RealFormId::SpR { n } => n,
            RealFormId::SpPq { p, q } => p + q,
        }
    }

    pub fn family(&self) -> Family {
        match self {
            RealFormId::SuPq { .. } | RealFormId::SlR { .. } => Family::N,
            _ => Family::M,
        }
    }
}

impl fmt::Display for RealFormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealFormId::SuPq { p, q } => write!(f, "SU({p},{q})"),
            RealFormId::SlR { m } => write!(f, "SL({m},R)"),
            RealFormId::SpR { n } => write!(f, "Sp({n},R)"),
            RealFormId::SpPq { p, q } => write!(f, "Sp({p},{q})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationResult {
    pub form: String,
    pub label: String,
    pub finite_dimensional: bool,
    pub integrable: bool,
    /// `None` when the module does not integrate.
    pub unitary: Option<bool>,
    pub matched_family: String,
    pub justification: String,
}

#[derive(Debug, Clone, Copy)]
enum Slot {
    Const(i64),
    /// `a ∉ ℤ≥0`
    NotNonnegInt,
    /// `a ∉ ℤ<0`
    NotNegInt,
    NegReal,
    PosReal,
    /// `m ∈ ℤ≥0`
    M,
    /// `−1−m`, `m ∈ ℤ≥0`
    MinusOneMinusM,
}

impl Slot {
    fn test(&self, e: &Affine, d: SymbolDomain) -> Option<bool> {
        let not = |v: Option<bool>| v.map(|b| !b);
        match self {
            Slot::Const(c) => e.equals(&GaussRational::from_i64(*c), d),
            Slot::NotNonnegInt => not(e.is_nonneg_integer(d)),
            Slot::NotNegInt => not(e.is_negative_integer(d)),
            Slot::NegReal => e.is_negative_real(d),
            Slot::PosReal => e.is_positive_real(d),
            Slot::M => e.is_nonneg_integer(d),
            Slot::MinusOneMinusM => e.is_negative_integer(d),
        }
    }
}

struct Pattern {
    slots: Vec<Slot>,
    family: &'static str,
}

impl Pattern {
    /// `−1` repeated `ones` times, then `mid`, then zeros up to length `n`.
    fn new(n: usize, ones: usize, mid: &[Slot], family: &'static str) -> Self {
        let mut slots = vec![Slot::Const(-1); ones];
        slots.extend_from_slice(mid);
        slots.resize(n, Slot::Const(0));
        Self { slots, family }
    }

    fn test(&self, entries: &[Affine], d: SymbolDomain) -> Option<bool> {
        if entries.len() != self.slots.len() {
            return Some(false);
        }
        let mut acc = Some(true);
        for (s, e) in self.slots.iter().zip(entries) {
            match s.test(e, d) {
                Some(false) => return Some(false),
                None => acc = None,
                Some(true) => {}
            }
        }
        acc
    }
}

/// First definitely matching pattern; `Err` when undetermined.
fn find<'p>(patterns: &'p [Pattern], entries: &[Affine], d: SymbolDomain, what: &str) -> Result<Option<&'p Pattern>> {
    let mut undetermined = false;
    for p in patterns {
        match p.test(entries, d) {
            Some(true) => return Ok(Some(p)),
            None => undetermined = true,
            Some(false) => {}
        }
    }
    if undetermined {
        Err(Error::ParameterDependent(what.into()))
    } else {
        Ok(None)
    }
}

const SU_P1: &str = "Either V or its contragredient is isomorphic to N(a,0,…,0) (for a ∈ C∖Z≥0) or to N(−1,m,0,…,0) (for m ∈ Z≥0), in case p=1; unitary if and only if a ∈ R<0 or V is N(−1,m,0,…,0)";
const SU_PN: &str = "Either V or its contragredient is isomorphic to N(−1,…,−1,a) (for a ∈ C∖Z<0) or to N(−1,…,−1,−1−m,0) (for m ∈ Z≥0), in case p=n; unitary if and only if a ∈ R>0 or V is N(−1,…,−1,−1−m,0)";
const SU_MID: &str = "Either V or its contragredient is isomorphic to N(−1,…,−1,m,0,…,0) (p entries −1) or to N(−1,…,−1,−1−m,0,…,0) (p−1 entries −1), for m ∈ Z≥0, in case 1<p<n; the integrable and unitary lists coincide in this case";
const FINITE: &str = "finite dimensional modules integrate; the representation is not unitary unless it is trivial, since it has finite dimension greater than 1 and G is not a compact group";
const SL: &str = "V can be integrated into a continuous representation of G_n on a Hilbert space if and only if V is finite dimensional";
const SP_PQ: &str = "V cannot integrate into a continuous representation of G_{p,q} on a Hilbert space";
const SP_R: &str = "V integrates into a continuous representation of G_n if and only if V or its contragredient is isomorphic to M(−1,…,−1) or M(−1,…,−1,−2); the representation is simple and unitary, the even or odd part of the metaplectic representation";

fn su_tables(p: usize, n: usize) -> (Vec<Pattern>, Vec<Pattern>, &'static str) {
    use Slot::*;
    const HDS: &str = "holomorphic discrete series";
    if p == 1 {
        let sphere = "deformed sphere representation N(a,0,…,0)";
        (
            vec![Pattern::new(n, 0, &[NotNonnegInt], sphere), Pattern::new(n, 1, &[M], HDS)],
            vec![Pattern::new(n, 0, &[NegReal], sphere), Pattern::new(n, 1, &[M], HDS)],
            SU_P1,
        )
    } else if p == n {
        let mirror = "mirrored family N(−1,…,−1,a)";
        (
            vec![Pattern::new(n, n - 1, &[NotNegInt], mirror), Pattern::new(n, n - 2, &[MinusOneMinusM], HDS)],
            vec![Pattern::new(n, n - 1, &[PosReal], mirror), Pattern::new(n, n - 2, &[MinusOneMinusM], HDS)],
            SU_PN,
        )
    } else {
        let list = || vec![Pattern::new(n, p, &[M], HDS), Pattern::new(n, p - 1, &[MinusOneMinusM], HDS)];
        (list(), list(), SU_MID)
    }
}

/// Looks up `label` in the tables for `form`.
pub fn classify(form: RealFormId, label: &ModuleLabel) -> Result<ClassificationResult> {
    form.validate()?;
    if label.family != form.family() {
        return Err(Error::FamilyMismatch { family: format!("{:?}", label.family), form: form.to_string() });
    }
    let n = form.rank();
    let mut base = label.clone().with_rank(n)?;
    base.contragredient = false;
    let d = base.a_domain;
    let result = |fd: bool, integrable: bool, unitary: Option<bool>, family: &str, why: &str| ClassificationResult {
        form: form.to_string(),
        label: label.to_string(),
        finite_dimensional: fd,
        integrable,
        unitary,
        matched_family: family.into(),
        justification: why.into(),
    };

    if base.family == Family::M {
        // M labels are treated as infinite-dimensional
        let entries = match &base.form {
            LabelForm::Tuple(e) => e.clone(),
            LabelForm::Hw(_) => return Err(Error::NotDegreeOne(format!("{label}: M labels are given as tuples"))),
        };
        return Ok(match form {
            RealFormId::SpPq { .. } => result(false, false, None, "none", SP_PQ),
            _ => {
                let table = [
                    Pattern::new(n, n, &[], "even part of the metaplectic representation"),
                    Pattern::new(n, n - 1, &[Slot::Const(-2)], "odd part of the metaplectic representation"),
                ];
                match find(&table, &entries, d, &format!("classification of {label}"))? {
                    Some(p) => result(false, true, Some(true), p.family, SP_R),
                    None => result(false, false, None, "none", SP_R),
                }
            }
        });
    }

    // reduce highest-weight forms to tuples; this also rejects non-degree-1 weights
    let entries = match &base.form {
        LabelForm::Tuple(e) => e.clone(),
        LabelForm::Hw(_) => match hw_to_label(&label_to_hw(&base)?, d)?.form {
            LabelForm::Tuple(e) => e,
            LabelForm::Hw(_) => unreachable!(),
        },
    };
    let tuple = ModuleLabel::tuple(Family::N, entries.clone()).with_domain(d);
    if finite_dimensional_p(&tuple)? {
        let hw = label_to_hw(&tuple)?;
        let trivial = hw
            .iter()
            .map(|c| c.equals(&GaussRational::from_i64(0), d))
            .try_fold(true, |acc, t| t.map(|t| acc && t))
            .ok_or_else(|| Error::ParameterDependent(format!("triviality of {label}")))?;
        let why = if matches!(form, RealFormId::SlR { .. }) { SL } else { FINITE };
        let family = if trivial { "trivial representation" } else { "finite-dimensional representation" };
        return Ok(result(true, true, Some(trivial), family, why));
    }
    match form {
        RealFormId::SlR { .. } => Ok(result(false, false, None, "none", SL)),
        RealFormId::SuPq { p, .. } => {
            let (integrable, unitary, why) = su_tables(p, n);
            let what = format!("classification of {label}");
            match find(&integrable, &entries, d, &what)? {
                None => Ok(result(false, false, None, "none", why)),
                Some(pat) => {
                    let u = find(&unitary, &entries, d, &what)?;
                    Ok(result(false, true, Some(u.is_some()), pat.family, why))
                }
            }
        }
        _ => unreachable!("family checked above"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(form: RealFormId, label: &str) -> ClassificationResult {
        classify(form, &label.parse().unwrap()).unwrap()
    }

    fn verdict(r: &ClassificationResult) -> (bool, Option<bool>) {
        (r.integrable, r.unitary)
    }

    #[test]
    fn su_1n() {
        let f = RealFormId::SuPq { p: 1, q: 2 };
        assert_eq!(verdict(&run(f, "N(-1/2,0)")), (true, Some(true)));
        assert_eq!(verdict(&run(f, "N(1/2,0)")), (true, Some(false)));
        assert_eq!(verdict(&run(f, "N(i,0)")), (true, Some(false)));
        assert_eq!(verdict(&run(f, "N(-1,3)")), (true, Some(true)));
        assert_eq!(verdict(&run(f, "N(-1,m)")), (true, Some(true)));
        assert_eq!(verdict(&run(f, "N(1,2)")), (false, None));
        assert_eq!(verdict(&run(f, "N(-1/2,0)^*")), (true, Some(true)));
        assert!(run(f, "N(-1,m)").matched_family.contains("holomorphic"));
        let neg = "N(a,0)".parse::<ModuleLabel>().unwrap().with_domain(SymbolDomain::NegativeReal);
        assert_eq!(verdict(&classify(f, &neg).unwrap()), (true, Some(true)));
        assert_eq!(verdict(&run(f, "N(a,0)")), (true, Some(false)));
    }

    #[test]
    fn su_nn() {
        let f = RealFormId::SuPq { p: 3, q: 1 };
        assert_eq!(verdict(&run(f, "N(-1,-1,5/2)")), (true, Some(true)));
        assert_eq!(verdict(&run(f, "N(-1,-1,-5/2)")), (true, Some(false)));
        assert_eq!(verdict(&run(f, "N(-1,-1,i)")), (true, Some(false)));
        assert_eq!(verdict(&run(f, "N(-1,-1-m,0)")), (true, Some(true)));
        assert_eq!(verdict(&run(f, "N(-1/2,0,0)")), (false, None));
    }

    #[test]
    fn su_intermediate_flags_coincidence() {
        let f = RealFormId::SuPq { p: 2, q: 2 };
        let r = run(f, "N(-1,-1,m)");
        assert_eq!(verdict(&r), (true, Some(true)));
        assert!(r.justification.contains("coincide"));
        assert_eq!(verdict(&run(f, "N(-1,-1-m,0)")), (true, Some(true)));
        assert_eq!(verdict(&run(f, "N(-1/2,0,0)")), (false, None));
    }

    #[test]
    fn finite_dimensional_labels() {
        let f = RealFormId::SuPq { p: 1, q: 2 };
        let r = run(f, "N(3,0)");
        assert!(r.finite_dimensional && r.integrable);
        assert_eq!(r.unitary, Some(false));
        assert_eq!(run(f, "N(0,0)").unitary, Some(true));
        let sl = RealFormId::SlR { m: 3 };
        assert_eq!(verdict(&run(sl, "N(2,0)")), (true, Some(false)));
        assert_eq!(verdict(&run(sl, "N(-1/2,0)")), (false, None));
        assert_eq!(verdict(&run(sl, "N(-1,m)")), (false, None));
    }

    #[test]
    fn symplectic_forms() {
        let spr = RealFormId::SpR { n: 3 };
        let r = run(spr, "M(-1,-1,-1)");
        assert_eq!(verdict(&r), (true, Some(true)));
        assert!(r.matched_family.contains("metaplectic"));
        assert_eq!(verdict(&run(spr, "M(-1,-1,-2)")), (true, Some(true)));
        assert_eq!(verdict(&run(spr, "M(-1,-1,-2)^*")), (true, Some(true)));
        assert_eq!(verdict(&run(spr, "M(-1,-1,1/2)")), (false, None));
        let sppq = RealFormId::SpPq { p: 1, q: 2 };
        assert_eq!(verdict(&run(sppq, "M(-1,-1,-1)")), (false, None));
    }

    #[test]
    fn errors() {
        let f = RealFormId::SuPq { p: 1, q: 2 };
        assert!(matches!(classify(f, &"M(-1,-1)".parse().unwrap()), Err(Error::FamilyMismatch { .. })));
        assert!(matches!(classify(f, &"hw: w1 + w2".parse().unwrap()), Err(Error::NotDegreeOne(_))));
        assert!(matches!(classify(f, &"N(1,2,3)".parse().unwrap()), Err(Error::RankMismatch { .. })));
        assert!(matches!(classify(f, &"N(m,0)".parse().unwrap()), Err(Error::ParameterDependent(_))));
        assert!(RealFormId::from_parts("su", Some(1), Some(1), None).is_err());
        assert!(RealFormId::from_parts("sl", None, None, Some(2)).is_err());
        assert!(RealFormId::from_parts("xx", None, None, Some(2)).is_err());
    }

    #[test]
    fn hw_form_queries() {
        let f = RealFormId::SuPq { p: 1, q: 2 };
        assert_eq!(verdict(&run(f, "hw: -1/2*w1")), (true, Some(true)));
    }
}
