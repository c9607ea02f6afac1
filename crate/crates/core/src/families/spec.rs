//! Family descriptions and their JSON form.

use serde::{Deserialize, Serialize};

use crate::arith::poly::Poly;
use crate::arith::rat::{format_rat, int, parse_rat};
use crate::error::{Error, Result};
use crate::{PolyQ, Rat, RatFunc};

/// The five supported fibrations over the affine line.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// `t y^2 = p(x)`.
    TwistLinear { p: PolyQ },
    /// `c (t^2 - a) y^2 = p(x)`.
    TwistQuadratic { c: Rat, a: Rat, p: PolyQ },
    /// `d(t) y^2 = p(x)`.
    TwistPoly { d: PolyQ, p: PolyQ },
    /// `x^3 + y^3 + (l^3 + 1) t^3 = 0`.
    CubicPencil,
    /// `Y^2 = X^3 + A(l) X + B(l)` with sections `(X(l), Y(l))`.
    WeierstrassPencil {
        a: RatFunc,
        b: RatFunc,
        sections: Vec<(RatFunc, RatFunc)>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub family: Family,
    /// Explicit declaration; see [`FamilySpec::declared_generic_rank`].
    pub generic_rank: Option<u32>,
}

impl FamilySpec {
    pub fn new(family: Family) -> Self {
        FamilySpec {
            family,
            generic_rank: None,
        }
    }

    pub fn with_generic_rank(mut self, r: u32) -> Self {
        self.generic_rank = Some(r);
        self
    }

    pub fn kind_name(&self) -> &'static str {
        match self.family {
            Family::TwistLinear { .. } => "twist_linear",
            Family::TwistQuadratic { .. } => "twist_quadratic",
            Family::TwistPoly { .. } => "twist_poly",
            Family::CubicPencil => "cubic_pencil",
            Family::WeierstrassPencil { .. } => "weierstrass_pencil",
        }
    }

    /// Explicit value, else the number of declared sections (0 for twist
    /// and cubic families).
    pub fn declared_generic_rank(&self) -> u32 {
        self.generic_rank.unwrap_or(match &self.family {
            Family::WeierstrassPencil { sections, .. } => sections.len() as u32,
            _ => 0,
        })
    }

    /// `(d, p)` for the twist kinds.
    pub fn twist_data(&self) -> Option<(PolyQ, &PolyQ)> {
        match &self.family {
            Family::TwistLinear { p } => Some((Poly::x(&int(1)), p)),
            Family::TwistQuadratic { c, a, p } => {
                Some((Poly::new(vec![-(c * a), int(0), c.clone()]), p))
            }
            Family::TwistPoly { d, p } => Some((d.clone(), p)),
            _ => None,
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: RawFamily = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        raw.into_spec()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&RawFamily::from_spec(self)).expect("plain data serializes")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum RatText {
    Text(String),
    Int(i64),
}

impl RatText {
    fn parse(&self) -> Result<Rat> {
        match self {
            RatText::Text(s) => parse_rat(s),
            RatText::Int(n) => Ok(int(*n)),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRatFunc {
    num: Vec<RatText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    den: Option<Vec<RatText>>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<Vec<RatText>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<Vec<RatText>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c: Option<RatText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<RatText>,
    #[serde(default, rename = "A", skip_serializing_if = "Option::is_none")]
    big_a: Option<RawRatFunc>,
    #[serde(default, rename = "B", skip_serializing_if = "Option::is_none")]
    big_b: Option<RawRatFunc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sections: Option<Vec<[RawRatFunc; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generic_rank: Option<u32>,
}

fn poly_of(v: &[RatText]) -> Result<PolyQ> {
    Ok(Poly::new(
        v.iter().map(RatText::parse).collect::<Result<_>>()?,
    ))
}

fn poly_text(p: &PolyQ) -> Vec<RatText> {
    p.coeffs()
        .iter()
        .map(|c| RatText::Text(format_rat(c)))
        .collect()
}

impl RawRatFunc {
    fn parse(&self) -> Result<RatFunc> {
        let num = poly_of(&self.num)?;
        let den = match &self.den {
            Some(d) => poly_of(d)?,
            None => Poly::constant(int(1)),
        };
        RatFunc::new(num, den)
    }

    fn from_func(f: &RatFunc) -> Self {
        RawRatFunc {
            num: poly_text(f.numerator()),
            den: (!f.is_polynomial()).then(|| poly_text(f.denominator())),
        }
    }
}

impl RawFamily {
    fn into_spec(self) -> Result<FamilySpec> {
        let kind = self.kind.as_str();
        let allowed: &[&str] = match kind {
            "twist_linear" => &["p"],
            "twist_quadratic" => &["c", "a", "p"],
            "twist_poly" => &["d", "p"],
            "cubic_pencil" => &[],
            "weierstrass_pencil" => &["A", "B", "sections"],
            other => return Err(Error::Parse(format!("unknown family kind {other:?}"))),
        };
        let present = [
            ("p", self.p.is_some()),
            ("d", self.d.is_some()),
            ("c", self.c.is_some()),
            ("a", self.a.is_some()),
            ("A", self.big_a.is_some()),
            ("B", self.big_b.is_some()),
            ("sections", self.sections.is_some()),
        ];
        for (name, is_set) in present {
            if is_set && !allowed.contains(&name) {
                return Err(Error::Parse(format!(
                    "field {name:?} does not apply to kind {kind:?}"
                )));
            }
        }
        let need = |name: &str| Error::Parse(format!("kind {kind:?} requires field {name:?}"));
        let family = match kind {
            "twist_linear" => Family::TwistLinear {
                p: poly_of(self.p.as_ref().ok_or_else(|| need("p"))?)?,
            },
            "twist_quadratic" => Family::TwistQuadratic {
                c: self.c.as_ref().ok_or_else(|| need("c"))?.parse()?,
                a: self.a.as_ref().ok_or_else(|| need("a"))?.parse()?,
                p: poly_of(self.p.as_ref().ok_or_else(|| need("p"))?)?,
            },
            "twist_poly" => Family::TwistPoly {
                d: poly_of(self.d.as_ref().ok_or_else(|| need("d"))?)?,
                p: poly_of(self.p.as_ref().ok_or_else(|| need("p"))?)?,
            },
            "cubic_pencil" => Family::CubicPencil,
            _ => Family::WeierstrassPencil {
                a: self.big_a.as_ref().ok_or_else(|| need("A"))?.parse()?,
                b: self.big_b.as_ref().ok_or_else(|| need("B"))?.parse()?,
                sections: self
                    .sections
                    .unwrap_or_default()
                    .iter()
                    .map(|[x, y]| Ok((x.parse()?, y.parse()?)))
                    .collect::<Result<_>>()?,
            },
        };
        Ok(FamilySpec {
            family,
            generic_rank: self.generic_rank,
        })
    }

    fn from_spec(spec: &FamilySpec) -> Self {
        let mut raw = RawFamily {
            kind: spec.kind_name().to_string(),
            generic_rank: spec.generic_rank,
            ..Default::default()
        };
        let text = |q: &Rat| Some(RatText::Text(format_rat(q)));
        match &spec.family {
            Family::TwistLinear { p } => raw.p = Some(poly_text(p)),
            Family::TwistQuadratic { c, a, p } => {
                raw.c = text(c);
                raw.a = text(a);
                raw.p = Some(poly_text(p));
            }
            Family::TwistPoly { d, p } => {
                raw.d = Some(poly_text(d));
                raw.p = Some(poly_text(p));
            }
            Family::CubicPencil => {}
            Family::WeierstrassPencil { a, b, sections } => {
                raw.big_a = Some(RawRatFunc::from_func(a));
                raw.big_b = Some(RawRatFunc::from_func(b));
                raw.sections = Some(
                    sections
                        .iter()
                        .map(|(x, y)| [RawRatFunc::from_func(x), RawRatFunc::from_func(y)])
                        .collect(),
                );
            }
        }
        raw
    }
}
