//! Exact field scalars: arbitrary-precision rationals or prime-field residues.
//!
//! Every computation in this crate runs over one of these two fields; there is
//! no floating point anywhere and equality is always exact.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Ground field selector: the rationals, or the prime field with `p` elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FieldKind {
    Rationals,
    Fp(u32),
}

impl FieldKind {
    /// Parses `"rationals"` or `"fp:<p>"` with `p` an odd-or-even prime below 2^31.
    pub fn parse(text: &str) -> Result<FieldKind, String> {
        if text == "rationals" {
            return Ok(FieldKind::Rationals);
        }
        if let Some(rest) = text.strip_prefix("fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| format!("invalid prime in field spec `{text}`"))?;
            if p >= (1u64 << 31) {
                return Err(format!("prime {p} too large (must be < 2^31)"));
            }
            let p = p as u32;
            if !is_prime_u32(p) {
                return Err(format!("{p} is not prime"));
            }
            return Ok(FieldKind::Fp(p));
        }
        Err(format!(
            "unknown field `{text}` (expected `rationals` or `fp:<p>`)"
        ))
    }

    pub fn zero(self) -> Scalar {
        match self {
            FieldKind::Rationals => Scalar::Rat(BigRational::zero()),
            FieldKind::Fp(p) => Scalar::Fp { value: 0, prime: p },
        }
    }

    pub fn one(self) -> Scalar {
        self.integer(1)
    }

    pub fn integer(self, n: i64) -> Scalar {
        match self {
            FieldKind::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldKind::Fp(p) => {
                let m = n.rem_euclid(p as i64) as u64;
                Scalar::Fp { value: m, prime: p }
            }
        }
    }

    /// The fraction `num/den`; `den` must be nonzero (and invertible mod p).
    pub fn ratio(self, num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        match self {
            FieldKind::Rationals => Scalar::Rat(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            )),
            FieldKind::Fp(_) => self.integer(num).div(&self.integer(den)),
        }
    }

    /// Parses a decimal integer or a `p/q` fraction, exactly.
    pub fn scalar_from_str(self, text: &str) -> Result<Scalar, String> {
        let text = text.trim();
        let (num_s, den_s) = match text.split_once('/') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (text, None),
        };
        let num: BigInt = num_s
            .parse()
            .map_err(|_| format!("invalid coefficient `{text}`"))?;
        let den: BigInt = match den_s {
            Some(d) => d
                .parse()
                .map_err(|_| format!("invalid coefficient `{text}`"))?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(format!("zero denominator in `{text}`"));
        }
        match self {
            FieldKind::Rationals => Ok(Scalar::Rat(BigRational::new(num, den))),
            FieldKind::Fp(p) => {
                let pb = BigInt::from(p);
                let n = ((num % &pb) + &pb) % &pb;
                let d = ((den % &pb) + &pb) % &pb;
                let n = n.to_u64().unwrap();
                let d = d.to_u64().unwrap();
                if d == 0 {
                    return Err(format!("denominator of `{text}` vanishes mod {p}"));
                }
                let nf = Scalar::Fp { value: n, prime: p };
                let df = Scalar::Fp { value: d, prime: p };
                Ok(nf.div(&df))
            }
        }
    }
}

fn is_prime_u32(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    let p64 = p as u64;
    while d * d <= p64 {
        if p64 % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field element. Rationals are kept in lowest terms with positive
/// denominator (enforced by `BigRational`); residues are kept in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Fp { value: u64, prime: u32 },
}

impl Scalar {
    pub fn field(&self) -> FieldKind {
        match self {
            Scalar::Rat(_) => FieldKind::Rationals,
            Scalar::Fp { prime, .. } => FieldKind::Fp(*prime),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_one(),
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { value: a, prime: p }, Scalar::Fp { value: b, prime: q }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Fp {
                    value: (a + b) % (*p as u64),
                    prime: *p,
                }
            }
            _ => panic!("mixed scalar kinds"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { value: a, prime: p }, Scalar::Fp { value: b, prime: q }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Fp {
                    value: (a * b) % (*p as u64),
                    prime: *p,
                }
            }
            _ => panic!("mixed scalar kinds"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { value, prime } => Scalar::Fp {
                value: if *value == 0 {
                    0
                } else {
                    *prime as u64 - *value
                },
                prime: *prime,
            },
        }
    }

    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Fp { value, prime } => Scalar::Fp {
                value: fp_pow(*value, *prime as u64 - 2, *prime as u64),
                prime: *prime,
            },
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }

    /// The underlying rational (rationals mode only).
    pub fn as_rat(&self) -> &BigRational {
        match self {
            Scalar::Rat(q) => q,
            _ => panic!("not a rational scalar"),
        }
    }
}

fn fp_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}
