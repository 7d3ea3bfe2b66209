//! JSON interchange and text rendering.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::AlmostSym;
use crate::combinatorics::Partition;
use crate::qt_field::RatQT;
use crate::symfunc::{join_signed, render_coeff_times, Basis};

#[derive(Serialize, Deserialize)]
struct TermJson {
    x: Vec<usize>,
    tail: Vec<usize>,
    coeff: RatQT,
}

#[derive(Serialize, Deserialize)]
struct AlmostSymJson {
    window: usize,
    terms: Vec<TermJson>,
}

impl Serialize for AlmostSym {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by(|((a1, l1), _), ((a2, l2), _)| {
            let d1 = a1.iter().sum::<usize>() + l1.size();
            let d2 = a2.iter().sum::<usize>() + l2.size();
            d1.cmp(&d2).then_with(|| a1.cmp(a2)).then_with(|| l1.cmp(l2))
        });
        let terms = keys.into_iter().map(|((a, l), c)| TermJson { x: a.clone(), tail: l.0.clone(), coeff: c.clone() }).collect();
        AlmostSymJson { window: self.window, terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlmostSym {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = AlmostSymJson::deserialize(d)?;
        let mut out = AlmostSym::zero(j.window);
        for t in j.terms {
            if t.x.len() != j.window {
                return Err(D::Error::custom(format!("exponent length {} differs from window {}", t.x.len(), j.window)));
            }
            let p = Partition::new(t.tail).map_err(|e| D::Error::custom(e.to_string()))?;
            out.add_term(t.x, p, &t.coeff);
        }
        Ok(out)
    }
}

fn monomial_text(a: &[usize]) -> String {
    let parts: Vec<String> = a
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
        .collect();
    parts.join("*")
}

impl AlmostSym {
    /// Text with the tail part read in `basis`, e.g. `x1*P[1](x2+...)`.
    pub fn display_in(&self, basis: Basis) -> String {
        let tail = format!("(x{}+...)", self.window + 1);
        let mut groups: Vec<_> = self.by_window().into_iter().collect();
        groups.sort_by(|(a, _), (b, _)| {
            let (da, db) = (a.iter().sum::<usize>(), b.iter().sum::<usize>());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        let mut parts = Vec::new();
        for (a, g) in groups {
            let mono = monomial_text(&a);
            let coeffs = if basis == Basis::Monomial { g.terms().clone() } else { g.expand(basis) };
            for (p, c) in coeffs.iter().rev() {
                let sym = if p.is_empty() { String::new() } else { format!("{}[{p}]{tail}", basis.symbol()) };
                let base = match (mono.is_empty(), sym.is_empty()) {
                    (true, _) => sym,
                    (false, true) => mono.clone(),
                    (false, false) => format!("{mono}*{sym}"),
                };
                parts.push(render_coeff_times(c, &base));
            }
        }
        join_signed(parts)
    }
}

impl fmt::Display for AlmostSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in(Basis::Monomial))
    }
}
