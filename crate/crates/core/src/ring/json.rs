//! JSON encoding of ring values.
//!
//! Laurent polynomial: `[{"ex", "ey", "num", "den"}]` with decimal strings
//! for the rational coefficient. Rational function: `{"num", "den"}`.
//! Kähler series: `{"cutoff", "normalized", "terms": [{"r", "s", "coeff"}]}`.
//! q-series: `{"prefactor", "order", "coeffs": [{"qe", "poly_t": [{"te",
//! "num", "den"}]}]}`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::kahler::KahlerSeries;
use super::laurent::{LaurentPoly, Monomial};
use super::qseries::QSeries;
use super::ratfn::RationalFunction;
use super::scalar::Coeff;

#[derive(Serialize, Deserialize)]
struct TermJson {
    ex: i32,
    ey: i32,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct RatJson {
    num: Vec<TermJson>,
    den: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct KahlerTermJson<R> {
    r: u32,
    s: u32,
    coeff: R,
}

#[derive(Serialize, Deserialize)]
struct KahlerJson<R> {
    cutoff: u32,
    #[serde(default)]
    normalized: bool,
    terms: Vec<KahlerTermJson<R>>,
}

#[derive(Serialize, Deserialize)]
struct TCoeffJson {
    te: i32,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct QCoeffJson {
    qe: i32,
    poly_t: Vec<TCoeffJson>,
}

#[derive(Serialize, Deserialize)]
struct QSeriesJson<P> {
    prefactor: P,
    order: i32,
    coeffs: Vec<QCoeffJson>,
}

fn terms_out<C: Coeff>(p: &LaurentPoly<C>) -> Vec<TermJson> {
    p.terms()
        .map(|(m, c)| {
            let (num, den) = c.to_fraction_strings();
            TermJson { ex: m.q, ey: m.t, num, den }
        })
        .collect()
}

fn coeff_in<C: Coeff, E: serde::de::Error>(num: &str, den: &str) -> Result<C, E> {
    C::from_fraction_strings(num, den).ok_or_else(|| E::custom(format!("bad rational {num}/{den}")))
}

fn terms_in<C: Coeff, E: serde::de::Error>(terms: Vec<TermJson>) -> Result<LaurentPoly<C>, E> {
    let mut p = LaurentPoly::zero();
    for t in terms {
        p.add_term(Monomial::new(t.ex, t.ey), coeff_in(&t.num, &t.den)?);
    }
    Ok(p)
}

impl<C: Coeff> Serialize for LaurentPoly<C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        terms_out(self).serialize(s)
    }
}

impl<'de, C: Coeff> Deserialize<'de> for LaurentPoly<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        terms_in(Vec::<TermJson>::deserialize(d)?)
    }
}

impl<C: Coeff> Serialize for RationalFunction<C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RatJson { num: terms_out(self.numerator()), den: terms_out(&self.denominator()) }.serialize(s)
    }
}

impl<'de, C: Coeff> Deserialize<'de> for RationalFunction<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RatJson::deserialize(d)?;
        let num = terms_in::<C, D::Error>(raw.num)?;
        let den = terms_in::<C, D::Error>(raw.den)?;
        RationalFunction::new(num, den).map_err(D::Error::custom)
    }
}

impl<C: Coeff> Serialize for KahlerSeries<C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        KahlerJson {
            cutoff: self.cutoff(),
            normalized: self.is_normalized(),
            terms: self.terms().into_iter().map(|((r, s), coeff)| KahlerTermJson { r, s, coeff }).collect(),
        }
        .serialize(s)
    }
}

impl<'de, C: Coeff> Deserialize<'de> for KahlerSeries<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = KahlerJson::<RationalFunction<C>>::deserialize(d)?;
        if let Some(t) = raw.terms.iter().find(|t| t.r + t.s > raw.cutoff) {
            return Err(D::Error::custom(format!("term ({},{}) beyond cutoff {}", t.r, t.s, raw.cutoff)));
        }
        Ok(KahlerSeries::from_terms(raw.cutoff, raw.terms.into_iter().map(|t| ((t.r, t.s), t.coeff))).with_normalized(raw.normalized))
    }
}

impl<C: Coeff> Serialize for QSeries<C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut coeffs: Vec<QCoeffJson> = Vec::new();
        for (m, c) in self.residual().terms() {
            let (num, den) = c.to_fraction_strings();
            let entry = TCoeffJson { te: m.t, num, den };
            match coeffs.last_mut() {
                Some(last) if last.qe == m.q => last.poly_t.push(entry),
                _ => coeffs.push(QCoeffJson { qe: m.q, poly_t: vec![entry] }),
            }
        }
        QSeriesJson { prefactor: self.prefactor(), order: self.order(), coeffs }.serialize(s)
    }
}

impl<'de, C: Coeff> Deserialize<'de> for QSeries<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = QSeriesJson::<LaurentPoly<C>>::deserialize(d)?;
        let mut residual = LaurentPoly::zero();
        for qc in raw.coeffs {
            for tc in qc.poly_t {
                residual.add_term(Monomial::new(qc.qe, tc.te), coeff_in::<C, D::Error>(&tc.num, &tc.den)?);
            }
        }
        Ok(QSeries::from_parts(raw.prefactor, raw.order, residual))
    }
}

#[cfg(test)]
mod tests {
    use crate::ring::expr::parse_rational;
    use crate::{QSer, RatFn, Rational, Series};

    fn rf(s: &str) -> RatFn {
        parse_rational::<Rational>(s).unwrap()
    }

    #[test]
    fn rational_round_trip() {
        let a = rf("(q+t)/(sqrt(t)*(1-q)*(1-t)^2)");
        let text = serde_json::to_string(&a).unwrap();
        let back: RatFn = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn laurent_schema() {
        let a = rf("-1/2*q^(1/2)");
        let v = serde_json::to_value(a.numerator()).unwrap();
        assert_eq!(v, serde_json::json!([{"ex": 1, "ey": 0, "num": "-1", "den": "2"}]));
    }

    #[test]
    fn kahler_round_trip() {
        let s = Series::from_terms(2, [((0, 0), rf("sqrt(q)/(1-q)")), ((1, 1), rf("2*sqrt(q)/(1-q)"))]).with_normalized(true);
        let text = serde_json::to_string(&s).unwrap();
        let back: Series = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        assert!(back.is_normalized());
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn kahler_rejects_terms_beyond_cutoff() {
        let text = r#"{"cutoff":0,"terms":[{"r":1,"s":0,"coeff":{"num":[{"ex":0,"ey":0,"num":"1","den":"1"}],"den":[{"ex":0,"ey":0,"num":"1","den":"1"}]}}]}"#;
        assert!(serde_json::from_str::<Series>(text).is_err());
    }

    #[test]
    fn qseries_round_trip() {
        let s = QSer::expand(&rf("(q+t)/(sqrt(t)*(1-q))"), 4).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        let back: QSer = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }
}
