use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::{Float, GaussRational, Ring};

/// The five monomial theories `S(φ) = v·φ^m/m` handled by the library.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theory {
    /// `φ⁴/4`.
    Quartic,
    /// `iφ³/3`.
    Cubic,
    /// `−φ⁴/4`.
    NegQuartic,
    /// `−iφ⁵/5`.
    Quintic,
    /// `φ⁶/6`.
    Sextic,
}

impl Theory {
    pub const ALL: [Theory; 5] = [
        Theory::Quartic,
        Theory::Cubic,
        Theory::NegQuartic,
        Theory::Quintic,
        Theory::Sextic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theory::Quartic => "quartic",
            Theory::Cubic => "cubic",
            Theory::NegQuartic => "neg-quartic",
            Theory::Quintic => "quintic",
            Theory::Sextic => "sextic",
        }
    }

    pub fn spec(self) -> TheorySpec {
        TheorySpec::of(self)
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theory {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "quartic" | "phi4" => Ok(Theory::Quartic),
            "cubic" | "iphi3" => Ok(Theory::Cubic),
            "neg-quartic" | "negquartic" | "-phi4" => Ok(Theory::NegQuartic),
            "quintic" | "phi5" => Ok(Theory::Quintic),
            "sextic" | "phi6" => Ok(Theory::Sextic),
            other => Err(Error::InvalidArgument(format!("unknown theory `{other}`"))),
        }
    }
}

/// A rational multiple of π, used for exact ray directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PiFraction {
    pub num: i64,
    pub den: i64,
}

impl PiFraction {
    pub const fn new(num: i64, den: i64) -> Self {
        PiFraction { num, den }
    }

    pub fn from_degrees(deg: i64) -> Self {
        PiFraction::new(deg, 180).reduced()
    }

    fn reduced(self) -> Self {
        fn gcd(a: i64, b: i64) -> i64 {
            if b == 0 {
                a.abs()
            } else {
                gcd(b, a % b)
            }
        }
        let g = gcd(self.num, self.den).max(1);
        let s = if self.den < 0 { -1 } else { 1 };
        PiFraction::new(s * self.num / g, s * self.den / g)
    }

    pub fn add(self, other: PiFraction) -> Self {
        PiFraction::new(self.num * other.den + other.num * self.den, self.den * other.den).reduced()
    }

    pub fn radians(self, prec: u32) -> Float {
        let pi = Float::with_val(prec, rug::float::Constant::Pi);
        pi * self.num / self.den
    }

    pub fn to_f64(self) -> f64 {
        std::f64::consts::PI * self.num as f64 / self.den as f64
    }

    pub fn degrees(self) -> f64 {
        180.0 * self.num as f64 / self.den as f64
    }
}

/// Integration path made of two rays from the origin: the integral runs in
/// from infinity along `incoming` and back out along `outgoing`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Contour {
    pub incoming: PiFraction,
    pub outgoing: PiFraction,
}

impl Contour {
    pub const fn new(incoming: PiFraction, outgoing: PiFraction) -> Self {
        Contour { incoming, outgoing }
    }

    pub fn perturbed(self, d_in: PiFraction, d_out: PiFraction) -> Self {
        Contour::new(self.incoming.add(d_in), self.outgoing.add(d_out))
    }
}

/// Declarative description of a monomial theory.
#[derive(Clone, Debug, PartialEq)]
pub struct TheorySpec {
    pub theory: Theory,
    /// Power `m` of the field in the action.
    pub exponent: u32,
    /// Coefficient in the field equation `v·⟨φ^{m−1}⟩ = J`.
    pub vertex: GaussRational,
    pub parity_symmetric: bool,
    pub default_contour: Contour,
}

impl TheorySpec {
    pub fn of(theory: Theory) -> Self {
        let pf = PiFraction::new;
        let (exponent, vertex, parity, contour) = match theory {
            Theory::Quartic => (4, GaussRational::one(), true, Contour::new(pf(1, 1), pf(0, 1))),
            Theory::Cubic => (3, GaussRational::i(), false, Contour::new(pf(-5, 6), pf(-1, 6))),
            Theory::NegQuartic => (
                4,
                GaussRational::from_i64(-1),
                false,
                Contour::new(pf(-3, 4), pf(-1, 4)),
            ),
            Theory::Quintic => (
                5,
                GaussRational::i().neg_ref(),
                false,
                Contour::new(pf(-7, 10), pf(-3, 10)),
            ),
            Theory::Sextic => (6, GaussRational::one(), true, Contour::new(pf(1, 1), pf(0, 1))),
        };
        TheorySpec {
            theory,
            exponent,
            vertex,
            parity_symmetric: parity,
            default_contour: contour,
        }
    }

    pub fn name(&self) -> &'static str {
        self.theory.name()
    }

    /// Green's functions left undetermined by the tower.
    pub fn base_unknowns(&self) -> Vec<usize> {
        let top = self.exponent as usize - 2;
        (1..=top)
            .filter(|k| !self.parity_symmetric || k % 2 == 0)
            .collect()
    }

    /// Index of the top Green's function in the equation at `level`.
    pub fn top_index(&self, level: usize) -> usize {
        self.exponent as usize - 1 + level
    }

    /// Centres of the `m` convergence sectors of `exp(−v φ^m/m)`, as
    /// fractions of π in `(−1, 1]`.
    pub fn sector_centres(&self) -> Vec<PiFraction> {
        // Re(v e^{imθ}) > 0 with v = e^{iα}: centres at θ = (2πk − α)/m.
        let m = self.exponent as i64;
        let (a_num, a_den) = vertex_phase(&self.vertex);
        (0..m)
            .map(|k| {
                let num = 2 * k * a_den - a_num;
                let mut c = PiFraction::new(num, a_den * m).reduced();
                while c.num > c.den {
                    c = c.add(PiFraction::new(-2, 1));
                }
                while c.num <= -c.den {
                    c = c.add(PiFraction::new(2, 1));
                }
                c
            })
            .collect()
    }

    /// Half-width of each convergence sector.
    pub fn sector_half_width(&self) -> PiFraction {
        PiFraction::new(1, 2 * self.exponent as i64)
    }
}

/// Phase of a unit vertex factor as a fraction of π.
fn vertex_phase(v: &GaussRational) -> (i64, i64) {
    if v.is_real() {
        if v.re.cmp0() == std::cmp::Ordering::Greater {
            (0, 1)
        } else {
            (1, 1)
        }
    } else if v.im.cmp0() == std::cmp::Ordering::Greater {
        (1, 2)
    } else {
        (-1, 2)
    }
}
