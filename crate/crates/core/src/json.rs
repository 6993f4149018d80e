//! Stable JSON interfaces.
//!
//! Rationals serialize as strings `"p/q"` (or `"p"` when the denominator is
//! one) in every format. Polynomials serialize as coefficient lists, lowest
//! degree first. All formats round-trip and the emitters are deterministic.

use serde::{Deserialize, Serialize};

use crate::aid::{AidResult, FieldMode};
use crate::canonical::{BlockSpec, CanonicalSpec};
use crate::error::Error;
use crate::lie::{CentralDerivation, Genus2Algebra};
use crate::matrix::RatMatrix;
use crate::pencil::{DivisorLocation, ElementaryDivisor, Pencil, PencilInvariants};
use crate::poly::Poly;
use crate::quad::QuadModulus;
use crate::rat::Rat;

fn rats_to_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(Rat::to_string).collect()
}

fn strings_to_rats(v: &[String]) -> Result<Vec<Rat>, Error> {
    v.iter().map(|s| Rat::parse(s)).collect()
}

fn matrix_to_grid(m: &RatMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| rats_to_strings(m.row(i))).collect()
}

fn grid_to_matrix(grid: &[Vec<String>]) -> Result<RatMatrix, Error> {
    let rows = grid
        .iter()
        .map(|row| strings_to_rats(row))
        .collect::<Result<Vec<_>, _>>()?;
    if rows.is_empty() {
        return Err(Error::Parse("empty matrix".into()));
    }
    let width = rows[0].len();
    if rows.iter().any(|r| r.len() != width) {
        return Err(Error::Parse("ragged matrix rows".into()));
    }
    Ok(RatMatrix::from_rows(rows))
}

/// `{ "n": int, "A": [[rat]], "B": [[rat]] }`
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct PencilJson {
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<String>>,
}

impl PencilJson {
    pub fn from_pencil(p: &Pencil) -> Self {
        PencilJson {
            n: p.n(),
            a: matrix_to_grid(p.a()),
            b: matrix_to_grid(p.b()),
        }
    }

    pub fn to_pencil(&self) -> Result<Pencil, Error> {
        let a = grid_to_matrix(&self.a)?;
        let b = grid_to_matrix(&self.b)?;
        if a.rows() != self.n {
            return Err(Error::Parse(format!(
                "declared n = {} but A has {} rows",
                self.n,
                a.rows()
            )));
        }
        Pencil::new(a, b)
    }
}

/// One divisor pair: `{ "type": "inf" | "finite" | "quad", ... }`.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct DivisorPairJson {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<String>>,
    pub exp: usize,
}

/// `{ "n": int, "pairs": [...], "minimal_indices": [int] }`
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct InvariantsJson {
    pub n: usize,
    pub pairs: Vec<DivisorPairJson>,
    pub minimal_indices: Vec<usize>,
}

impl InvariantsJson {
    pub fn from_invariants(inv: &PencilInvariants) -> Self {
        let pairs = inv
            .divisor_pairs
            .iter()
            .map(|pair| match &pair.location {
                DivisorLocation::Infinity => DivisorPairJson {
                    kind: "inf".into(),
                    alpha: None,
                    modulus: None,
                    exp: pair.exponent,
                },
                DivisorLocation::Finite(alpha) => DivisorPairJson {
                    kind: "finite".into(),
                    alpha: Some(alpha.to_string()),
                    modulus: None,
                    exp: pair.exponent,
                },
                DivisorLocation::Quadratic(modulus) => DivisorPairJson {
                    kind: "quad".into(),
                    alpha: None,
                    modulus: Some(rats_to_strings(modulus.to_poly().coeffs())),
                    exp: pair.exponent,
                },
            })
            .collect();
        InvariantsJson {
            n: inv.n,
            pairs,
            minimal_indices: inv.minimal_indices.clone(),
        }
    }

    pub fn to_invariants(&self) -> Result<PencilInvariants, Error> {
        let mut pairs = Vec::with_capacity(self.pairs.len());
        for p in &self.pairs {
            let location = match p.kind.as_str() {
                "inf" => DivisorLocation::Infinity,
                "finite" => {
                    let alpha = p
                        .alpha
                        .as_ref()
                        .ok_or_else(|| Error::Parse("finite pair needs alpha".into()))?;
                    DivisorLocation::Finite(Rat::parse(alpha)?)
                }
                "quad" => {
                    let coeffs = p
                        .modulus
                        .as_ref()
                        .ok_or_else(|| Error::Parse("quad pair needs modulus".into()))?;
                    let poly = Poly::from_coeffs(strings_to_rats(coeffs)?);
                    DivisorLocation::Quadratic(QuadModulus::from_poly(&poly)?)
                }
                other => return Err(Error::Parse(format!("unknown pair type {other:?}"))),
            };
            if p.exp == 0 {
                return Err(Error::Parse("divisor exponent must be positive".into()));
            }
            pairs.push(ElementaryDivisor {
                location,
                exponent: p.exp,
            });
        }
        PencilInvariants::new(self.n, pairs, self.minimal_indices.clone())
    }
}

/// `{ "i": int, "j": int, "y1": rat, "y2": rat }` with 1-based generators.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    pub y1: String,
    pub y2: String,
}

/// Either wraps a pencil or lists brackets explicitly.
#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum AlgebraJson {
    PencilForm {
        pencil: PencilJson,
    },
    Brackets {
        dim_x: usize,
        brackets: Vec<BracketJson>,
    },
}

impl AlgebraJson {
    pub fn to_pencil(&self) -> Result<Pencil, Error> {
        match self {
            AlgebraJson::PencilForm { pencil } => pencil.to_pencil(),
            AlgebraJson::Brackets { dim_x, brackets } => {
                let n = *dim_x;
                let mut a = RatMatrix::zeros(n, n);
                let mut b = RatMatrix::zeros(n, n);
                for br in brackets {
                    if br.i == 0 || br.j == 0 || br.i > n || br.j > n {
                        return Err(Error::Parse(format!(
                            "bracket generator index out of range: [x{}, x{}]",
                            br.i, br.j
                        )));
                    }
                    if br.i == br.j {
                        return Err(Error::Parse("bracket [x_i, x_i] must vanish".into()));
                    }
                    let (i, j) = (br.i - 1, br.j - 1);
                    if !a.at(i, j).is_zero() || !b.at(i, j).is_zero() {
                        return Err(Error::Parse(format!(
                            "duplicate bracket for [x{}, x{}]",
                            br.i, br.j
                        )));
                    }
                    let y1 = Rat::parse(&br.y1)?;
                    let y2 = Rat::parse(&br.y2)?;
                    *a.at_mut(i, j) = y1.clone();
                    *a.at_mut(j, i) = -&y1;
                    *b.at_mut(i, j) = y2.clone();
                    *b.at_mut(j, i) = -&y2;
                }
                Pencil::new(a, b)
            }
        }
    }

    /// Validates genus 2 on top of the pencil conversion.
    pub fn to_algebra(&self) -> Result<Genus2Algebra, Error> {
        Genus2Algebra::from_pencil(self.to_pencil()?)
    }
}

/// Accepts either a pencil file or an algebra file.
#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum PencilOrAlgebraJson {
    Pencil(PencilJson),
    Algebra(AlgebraJson),
}

impl PencilOrAlgebraJson {
    pub fn to_pencil(&self) -> Result<Pencil, Error> {
        match self {
            PencilOrAlgebraJson::Pencil(p) => p.to_pencil(),
            PencilOrAlgebraJson::Algebra(a) => a.to_pencil(),
        }
    }
}

/// `{ "kind": "inf" | "finite" | "complex" | "minidx", ...params }`
#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BlockJson {
    Inf { e: usize },
    Finite { alpha: String, f: usize },
    Complex { a: String, b: String, m: usize },
    Minidx { eps: usize },
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct CanonicalSpecJson {
    pub blocks: Vec<BlockJson>,
}

impl CanonicalSpecJson {
    pub fn from_spec(spec: &CanonicalSpec) -> Self {
        let blocks = spec
            .blocks
            .iter()
            .map(|b| match b {
                BlockSpec::Inf { e } => BlockJson::Inf { e: *e },
                BlockSpec::Finite { alpha, f } => BlockJson::Finite {
                    alpha: alpha.to_string(),
                    f: *f,
                },
                BlockSpec::Complex { a, b, m } => BlockJson::Complex {
                    a: a.to_string(),
                    b: b.to_string(),
                    m: *m,
                },
                BlockSpec::MinIdx { eps } => BlockJson::Minidx { eps: *eps },
            })
            .collect();
        CanonicalSpecJson { blocks }
    }

    pub fn to_spec(&self) -> Result<CanonicalSpec, Error> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                Ok(match b {
                    BlockJson::Inf { e } => BlockSpec::Inf { e: *e },
                    BlockJson::Finite { alpha, f } => BlockSpec::Finite {
                        alpha: Rat::parse(alpha)?,
                        f: *f,
                    },
                    BlockJson::Complex { a, b, m } => BlockSpec::Complex {
                        a: Rat::parse(a)?,
                        b: Rat::parse(b)?,
                        m: *m,
                    },
                    BlockJson::Minidx { eps } => BlockSpec::MinIdx { eps: *eps },
                })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        CanonicalSpec::new(blocks)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct DerivationJson {
    pub d1: Vec<String>,
    pub d2: Vec<String>,
}

/// `{ "mode": ..., "dim_inn": ..., "dim_c": ..., "dim_aid": ..., "aid_basis": [...] }`
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct AidResultJson {
    pub mode: String,
    pub dim_inn: usize,
    pub dim_c: usize,
    pub dim_aid: usize,
    pub aid_basis: Vec<DerivationJson>,
}

impl AidResultJson {
    pub fn from_result(r: &AidResult) -> Self {
        AidResultJson {
            mode: r.mode.to_string(),
            dim_inn: r.dim_inn,
            dim_c: r.dim_c,
            dim_aid: r.dim_aid,
            aid_basis: r
                .aid_basis
                .basis
                .iter()
                .map(|d| DerivationJson {
                    d1: rats_to_strings(&d.d1),
                    d2: rats_to_strings(&d.d2),
                })
                .collect(),
        }
    }

    pub fn basis(&self) -> Result<Vec<CentralDerivation>, Error> {
        self.aid_basis
            .iter()
            .map(|d| {
                Ok(CentralDerivation {
                    d1: strings_to_rats(&d.d1)?,
                    d2: strings_to_rats(&d.d2)?,
                })
            })
            .collect()
    }
}

pub fn parse_field_mode(s: &str) -> Result<FieldMode, Error> {
    match s {
        "real" => Ok(FieldMode::Real),
        "closed" => Ok(FieldMode::AlgebraicallyClosed),
        other => Err(Error::Parse(format!(
            "unknown field mode {other:?} (expected \"real\" or \"closed\")"
        ))),
    }
}

/// Deterministic pretty emitter with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    s.push('\n');
    s
}
