use clap::ValueEnum;
use serde::Serialize;

use super::Caps;
use crate::combinatorics::{Composition, Partition};
use crate::error::{Error, Result};
use crate::finite_daha::e_hhl;
use crate::stable_limit::{a_lambda, composition_weight, e_tilde, e_tilde_pair, gamma, kappa, stable_weight, StableIndex};
use crate::symfunc::{hall_littlewood_p, macdonald_p, Basis};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Object {
    /// Finite `E_mu` in `max(len(mu), n)` variables.
    #[value(name = "E")]
    E,
    #[value(name = "Etilde")]
    Etilde,
    #[value(name = "EtildePair")]
    EtildePair,
    #[value(name = "A")]
    A,
    /// Transformed Hall-Littlewood `P_lambda`.
    #[value(name = "HL")]
    Hl,
    #[value(name = "MacP")]
    MacP,
    #[value(name = "weight")]
    Weight,
    #[value(name = "kappa")]
    Kappa,
    #[value(name = "gamma")]
    Gamma,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Serialize)]
struct Computed<'a, T: Serialize> {
    object: &'a str,
    mu: &'a [usize],
    lambda: &'a [usize],
    value: T,
}

fn render<T: Serialize>(format: Format, object: Object, mu: &[usize], lambda: &[usize], value: T, text: String) -> String {
    match format {
        Format::Text => text,
        Format::Json => {
            let name = object.to_possible_value().expect("no skipped variants").get_name().to_string();
            serde_json::to_string(&Computed { object: &name, mu, lambda, value }).expect("values serialize")
        }
    }
}

/// Computes `object` at the index `(mu, lambda)` and serializes it.
///
/// ```
/// use macdlab::cli_verify::{compute, Caps, Format, Object};
/// use macdlab::combinatorics::{Composition, Partition};
///
/// let mu: Composition = "1,1,1".parse().unwrap();
/// let s = compute(Object::Etilde, &mu, &Partition::empty(), None, Format::Text, &Caps::default()).unwrap();
/// assert_eq!(s, "x1*x2*x3");
/// ```
pub fn compute(
    object: Object,
    mu: &Composition,
    lambda: &Partition,
    n: Option<usize>,
    format: Format,
    caps: &Caps,
) -> Result<String> {
    let (m, l) = (&mu.0[..], &lambda.0[..]);
    caps.check("degree", mu.size() + lambda.size(), caps.max_degree)?;
    let needs_lambda_only = matches!(object, Object::A | Object::Hl | Object::MacP);
    if needs_lambda_only && !m.is_empty() {
        return Err(Error::Precondition("this object is indexed by --lambda alone".into()));
    }
    let out = match object {
        Object::E => {
            if !l.is_empty() {
                return Err(Error::Precondition("E takes --mu only".into()));
            }
            let vars = n.unwrap_or(0).max(m.len());
            caps.check("variables", vars, caps.max_m)?;
            let e = e_hhl(&mu.padded(vars - m.len()).0);
            let text = e.to_string();
            render(format, object, m, l, e, text)
        }
        Object::Etilde => {
            if !l.is_empty() {
                return Err(Error::Precondition("Etilde takes --mu only; use EtildePair".into()));
            }
            caps.check("window", mu.reduced().len(), caps.max_window)?;
            let e = e_tilde(m);
            render(format, object, m, l, &*e, e.display_in(Basis::HallLittlewood))
        }
        Object::EtildePair => {
            let idx = StableIndex::new(m.to_vec(), l.to_vec())?;
            caps.check("window", m.len(), caps.max_window)?;
            let e = e_tilde_pair(&idx);
            render(format, object, m, l, &*e, e.display_in(Basis::HallLittlewood))
        }
        Object::A => {
            let f = a_lambda(lambda);
            let text = f.to_string();
            render(format, object, m, l, f, text)
        }
        Object::Hl => {
            let f = hall_littlewood_p(lambda);
            let text = f.to_string();
            render(format, object, m, l, f, text)
        }
        Object::MacP => {
            let f = macdonald_p(lambda);
            let text = f.to_string();
            render(format, object, m, l, f, text)
        }
        Object::Weight => {
            let w = if l.is_empty() { composition_weight(m) } else { stable_weight(&StableIndex::new(m.to_vec(), l.to_vec())?) };
            let text = w.to_string();
            render(format, object, m, l, w, text)
        }
        Object::Kappa | Object::Gamma => {
            let joined = mu.concat(l).0;
            let v = if object == Object::Kappa { kappa(&joined) } else { gamma(&joined) };
            let text = v.to_string();
            render(format, object, m, l, v, text)
        }
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::almost_sym::AlmostSym;
    use crate::qt_field::RatQT;
    use crate::stable_limit::StableWeight;

    fn run(o: Object, mu: &str, la: &str, f: Format) -> Result<String> {
        compute(o, &mu.parse()?, &la.parse()?, None, f, &Caps::default())
    }

    #[test]
    fn documented_outputs() {
        assert_eq!(run(Object::Etilde, "1,1,1", "", Format::Text).unwrap(), "x1*x2*x3");
        assert_eq!(run(Object::Kappa, "0", "", Format::Text).unwrap(), "t/(1 - t)");
        assert_eq!(run(Object::Weight, "2", "", Format::Text).unwrap(), "(q^2*t, 0, ...)");
        assert_eq!(run(Object::EtildePair, "1", "1,1", Format::Text).unwrap(), "x1*P[1,1](x2+...)");
    }

    #[test]
    fn json_round_trips() {
        #[derive(serde::Deserialize)]
        struct Back<T> {
            object: String,
            value: T,
        }
        let s = run(Object::EtildePair, "1,0,2", "1", Format::Json).unwrap();
        let b: Back<AlmostSym> = serde_json::from_str(&s).unwrap();
        assert_eq!(b.object, "EtildePair");
        assert_eq!(b.value, *e_tilde_pair(&StableIndex::new(vec![1, 0, 2], vec![1]).unwrap()));
        let s = run(Object::Gamma, "0,2,1", "", Format::Json).unwrap();
        assert_eq!(serde_json::from_str::<Back<RatQT>>(&s).unwrap().value, gamma(&[0, 2, 1]));
        let s = run(Object::Weight, "1,1", "1", Format::Json).unwrap();
        assert_eq!(serde_json::from_str::<Back<StableWeight>>(&s).unwrap().value.0, vec![RatQT::qt(1, 3), RatQT::qt(1, 2)]);
    }

    #[test]
    fn bad_requests() {
        assert!(matches!(run(Object::EtildePair, "1,0", "", Format::Text), Err(Error::Precondition(_))));
        assert!(run(Object::A, "1", "1", Format::Text).is_err());
        assert!(matches!(run(Object::Hl, "", "1,2", Format::Text), Err(Error::Precondition(_) | Error::Parse(_))));
        let caps = Caps { max_degree: 2, ..Caps::default() };
        let r = compute(Object::Etilde, &"2,1".parse().unwrap(), &Partition::empty(), None, Format::Text, &caps);
        assert!(matches!(r, Err(Error::CapExceeded(_))));
    }

    #[test]
    fn finite_e_pads_to_n() {
        let s = compute(Object::E, &"1".parse().unwrap(), &Partition::empty(), Some(2), Format::Text, &Caps::default()).unwrap();
        assert_eq!(s, "x1");
    }
}
