//! Transcribed reference values, one JSON document per displayed result.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::amplitude::AmplitudeSpec;
use crate::error::{Error, Result};
use crate::ring::expr::{parse_laurent, parse_rational};
use crate::ring::{Bidegree, Monomial};
use crate::{Laurent, QSer, RatFn, Rational};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawCoefficient {
    pub r: u32,
    pub s: u32,
    pub expr: String,
}

/// A replacement for a printed value, with the reason it is needed.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Erratum {
    pub r: u32,
    pub s: u32,
    pub corrected: String,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RawBody {
    /// Rational coefficients; determined bidegrees not listed are zero.
    Rational {
        complete_through: u32,
        coefficients: Vec<RawCoefficient>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        errata: Vec<Erratum>,
    },
    /// A printed q-expansion of one coefficient, up to a monomial prefactor.
    Expansion { r: u32, s: u32, printed_order: u32, series: String },
}

/// On-disk fixture document.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawFixture {
    pub id: String,
    pub source: String,
    pub spec: AmplitudeSpec,
    #[serde(flatten)]
    pub body: RawBody,
}

#[derive(Clone, Debug)]
pub enum Expected {
    Rational { complete_through: u32, coefficients: BTreeMap<Bidegree, RatFn>, errata: Vec<Erratum> },
    Expansion { bidegree: Bidegree, printed_order: u32, series: QSer },
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub id: String,
    pub source: String,
    pub spec: AmplitudeSpec,
    pub expected: Expected,
}

impl Fixture {
    pub fn from_raw(raw: RawFixture) -> Result<Self> {
        let bad = |msg: String| Error::Fixture { id: raw.id.clone(), msg };
        let expected = match &raw.body {
            RawBody::Rational { complete_through, coefficients, errata } => {
                let mut map = BTreeMap::new();
                for c in coefficients {
                    let v = parse_rational::<Rational>(&c.expr).map_err(|e| bad(format!("({},{}): {e}", c.r, c.s)))?;
                    if map.insert((c.r, c.s), v).is_some() {
                        return Err(bad(format!("duplicate bidegree ({},{})", c.r, c.s)));
                    }
                }
                for e in errata {
                    let v = parse_rational::<Rational>(&e.corrected).map_err(|err| bad(format!("erratum ({},{}): {err}", e.r, e.s)))?;
                    map.insert((e.r, e.s), v);
                }
                if let Some((r, s)) = map.keys().find(|(r, s)| r + s > *complete_through) {
                    return Err(bad(format!("({r},{s}) lies beyond complete_through")));
                }
                Expected::Rational { complete_through: *complete_through, coefficients: map, errata: errata.clone() }
            }
            RawBody::Expansion { r, s, printed_order, series } => {
                let p: Laurent = parse_laurent(series).map_err(|e| bad(e.to_string()))?;
                if p.is_zero() {
                    return Err(bad("empty expansion".into()));
                }
                let order = 2 * *printed_order as i32;
                Expected::Expansion {
                    bidegree: (*r, *s),
                    printed_order: *printed_order,
                    series: QSer::normalized(p.truncate_q(order), Monomial::ONE, order),
                }
            }
        };
        Ok(Fixture { id: raw.id, source: raw.source, spec: raw.spec, expected })
    }

    pub fn from_json(src: &str) -> Result<Self> {
        let raw: RawFixture = serde_json::from_str(src).map_err(|e| Error::Json(e.to_string()))?;
        Self::from_raw(raw)
    }

    /// Values with a nonempty color refer to the normalized series `Ẑ`.
    pub fn is_normalized(&self) -> bool {
        !self.spec.alpha.is_empty() || !self.spec.gamma.is_empty()
    }

    pub fn is_expansion(&self) -> bool {
        matches!(self.expected, Expected::Expansion { .. })
    }
}

/// Every `*.json` fixture in `dir`, sorted by id.
pub fn load_fixtures(dir: &Path) -> Result<Vec<Fixture>> {
    let io = |e: std::io::Error| Error::Fixture { id: dir.display().to_string(), msg: e.to_string() };
    let mut out = Vec::new();
    for entry in fs::read_dir(dir).map_err(io)? {
        let path = entry.map_err(io)?.path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let src = fs::read_to_string(&path).map_err(io)?;
        let f = Fixture::from_json(&src).map_err(|e| match e {
            Error::Json(msg) => Error::Fixture { id: path.display().to_string(), msg },
            e => e,
        })?;
        out.push(f);
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    if let Some(w) = out.windows(2).find(|w| w[0].id == w[1].id) {
        return Err(Error::Fixture { id: w[0].id.clone(), msg: "duplicate id".into() });
    }
    Ok(out)
}

/// The fixture directory shipped with the crate.
pub fn bundled_dir() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}
