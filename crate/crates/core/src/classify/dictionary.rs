//! The dictionary between highest weights and `N`-tuples for the three
//! degree-1 highest-weight shapes `aω₁`, `aω_i − (1+a)ω_{i+1}` and `aω_n`.
//!
//! The dictionary is not injective at the last node: `aω_{n−1} − (1+a)ω_n`
//! and `aω_n` both map to `N(−1,…,−1,−1−a)`. Reading a tuple of that form
//! always uses the `aω_n` shape.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::scalar::GaussRational;

use super::label::{Affine, Family, LabelForm, ModuleLabel, SymbolDomain};

/// A candidate shape: its tri-state test and a constructor.
type Shape<'a, T> = (Option<bool>, Box<dyn FnOnce() -> T + 'a>);

/// First shape whose test is definitely true; `ParameterDependent` if none
/// is but some test is undetermined.
fn first_match<T>(what: &str, shapes: Vec<Shape<'_, T>>) -> Result<Option<T>> {
    let mut undetermined = false;
    for (test, build) in shapes {
        match test {
            Some(true) => return Ok(Some(build())),
            None => undetermined = true,
            Some(false) => {}
        }
    }
    if undetermined {
        Err(Error::ParameterDependent(format!("shape of {what}")))
    } else {
        Ok(None)
    }
}

fn all(tests: impl IntoIterator<Item = Option<bool>>) -> Option<bool> {
    let mut acc = Some(true);
    for t in tests {
        match t {
            Some(false) => return Some(false),
            None => acc = None,
            Some(true) => {}
        }
    }
    acc
}

fn is_const(e: &Affine, c: i64, d: SymbolDomain) -> Option<bool> {
    e.equals(&GaussRational::from_i64(c), d)
}

/// Highest-weight coefficients `(λ(H₀), …, λ(H_{n−1}))` of an `N` label.
pub fn label_to_hw(label: &ModuleLabel) -> Result<Vec<Affine>> {
    if label.family != Family::N {
        return Err(Error::NotDegreeOne(format!("{label}: only N labels carry the type A dictionary")));
    }
    let entries = match &label.form {
        LabelForm::Hw(_) => {
            let hw = label.hw_coeffs(label.rank()).expect("hw form");
            hw_to_label(&hw, label.a_domain)?;
            return Ok(hw);
        }
        LabelForm::Tuple(e) => e,
    };
    let n = entries.len();
    if n == 0 {
        return Err(Error::Parse("empty label".into()));
    }
    let d = label.a_domain;
    let zero = || Affine::int(0);
    let minus_one_minus = |e: &Affine| Affine::int(-1).sub(e).expect("single symbol");
    let mut shapes: Vec<Shape<'_, Vec<Affine>>> = Vec::new();
    // N(c,0,…,0) ↦ cω₁
    shapes.push((
        all(entries[1..].iter().map(|e| is_const(e, 0, d))),
        Box::new(move || {
            let mut hw = vec![zero(); n];
            hw[0] = entries[0].clone();
            hw
        }),
    ));
    // N(−1^i, e, 0,…) ↦ (−1−e)ω_i + eω_{i+1}, for 1 ≤ i ≤ n−2
    for i in 1..n.saturating_sub(1) {
        let test = all(
            entries[..i].iter().map(|e| is_const(e, -1, d)).chain(entries[i + 1..].iter().map(|e| is_const(e, 0, d))),
        );
        shapes.push((
            test,
            Box::new(move || {
                let mut hw = vec![zero(); n];
                hw[i - 1] = minus_one_minus(&entries[i]);
                hw[i] = entries[i].clone();
                hw
            }),
        ));
    }
    // N(−1,…,−1,e) ↦ (−1−e)ω_n
    if n >= 2 {
        shapes.push((
            all(entries[..n - 1].iter().map(|e| is_const(e, -1, d))),
            Box::new(move || {
                let mut hw = vec![zero(); n];
                hw[n - 1] = minus_one_minus(&entries[n - 1]);
                hw
            }),
        ));
    }
    first_match(&label.to_string(), shapes)?
        .ok_or_else(|| Error::NotDegreeOne(format!("{label} is not a highest weight module of degree 1")))
}

/// The `N`-tuple of a degree-1 highest weight given by `ω` coefficients.
pub fn hw_to_label(hw: &[Affine], domain: SymbolDomain) -> Result<ModuleLabel> {
    let n = hw.len();
    if n == 0 {
        return Err(Error::Parse("empty highest weight".into()));
    }
    let d = domain;
    let minus_one_minus = |e: &Affine| Affine::int(-1).sub(e).expect("single symbol");
    let mut shapes: Vec<Shape<'_, Vec<Affine>>> = Vec::new();
    // cω₁ ↦ N(c,0,…,0)
    shapes.push((
        all(hw[1..].iter().map(|e| is_const(e, 0, d))),
        Box::new(move || {
            let mut t = vec![Affine::int(0); n];
            t[0] = hw[0].clone();
            t
        }),
    ));
    // cω_n ↦ N(−1,…,−1,−1−c)
    if n >= 2 {
        shapes.push((
            all(hw[..n - 1].iter().map(|e| is_const(e, 0, d))),
            Box::new(move || {
                let mut t = vec![Affine::int(-1); n];
                t[n - 1] = minus_one_minus(&hw[n - 1]);
                t
            }),
        ));
    }
    // cω_i − (1+c)ω_{i+1} ↦ N(−1^i, −1−c, 0,…)
    for i in 1..n {
        let others = hw.iter().enumerate().filter(|(k, _)| *k + 1 != i && *k != i).map(|(_, e)| is_const(e, 0, d));
        let tie = hw[i].same_as(&minus_one_minus(&hw[i - 1]), d);
        shapes.push((
            all(others.chain([tie])),
            Box::new(move || {
                let mut t = vec![Affine::int(0); n];
                for e in t.iter_mut().take(i) {
                    *e = Affine::int(-1);
                }
                t[i] = minus_one_minus(&hw[i - 1]);
                t
            }),
        ));
    }
    let tuple = first_match("highest weight", shapes)?
        .ok_or_else(|| Error::NotDegreeOne("highest weight is not of the form aω₁, aω_i−(1+a)ω_{i+1} or aω_n".into()))?;
    Ok(ModuleLabel::tuple(Family::N, tuple).with_domain(domain))
}

/// Whether an `N` label is finite-dimensional: a degree-1 highest weight that
/// is dominant integral. Labels outside the highest-weight shapes are not
/// highest weight modules and hence infinite-dimensional.
pub fn finite_dimensional_p(label: &ModuleLabel) -> Result<bool> {
    let hw = match label_to_hw(label) {
        Ok(hw) => hw,
        Err(Error::NotDegreeOne(_)) if matches!(label.form, LabelForm::Tuple(_)) && label.family == Family::N => {
            return Ok(false);
        }
        Err(e) => return Err(e),
    };
    all(hw.iter().map(|c| c.is_nonneg_integer(label.a_domain)))
        .ok_or_else(|| Error::ParameterDependent(format!("dominance of the highest weight of {label}")))
}

/// Weyl dimension of a finite-dimensional `N` label with numeric entries.
pub fn dimension(label: &ModuleLabel) -> Result<Option<u128>> {
    if !finite_dimensional_p(label)? {
        return Ok(None);
    }
    let hw: Vec<i64> = label_to_hw(label)?
        .iter()
        .map(|c| {
            c.as_constant()
                .and_then(|g| g.as_integer())
                .and_then(|v| v.to_i64())
                .ok_or_else(|| Error::ParameterDependent(format!("dimension of {label}")))
        })
        .collect::<Result<_>>()?;
    let rank = hw.len();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..rank {
        let mut s = 0i64;
        for j in i..rank {
            s += hw[j] + 1;
            num *= s;
            den *= (j - i + 1) as i64;
        }
    }
    Ok((num / den).to_u128())
}
