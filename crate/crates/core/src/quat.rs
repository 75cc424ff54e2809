//! Rational quaternions: the division ring Q + Qi + Qj + Qk with
//! i^2 = j^2 = k^2 = -1, ij = k, jk = i, ki = j.

use num::{BigInt, BigRational, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quat {
    pub r: BigRational,
    pub i: BigRational,
    pub j: BigRational,
    pub k: BigRational,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Quat {
    pub fn zero() -> Quat {
        Quat { r: rat(0), i: rat(0), j: rat(0), k: rat(0) }
    }

    pub fn one() -> Quat {
        Quat { r: rat(1), i: rat(0), j: rat(0), k: rat(0) }
    }

    pub fn scalar(r: BigRational) -> Quat {
        Quat { r, i: rat(0), j: rat(0), k: rat(0) }
    }

    pub fn unit_i() -> Quat {
        Quat { r: rat(0), i: rat(1), j: rat(0), k: rat(0) }
    }

    pub fn unit_j() -> Quat {
        Quat { r: rat(0), i: rat(0), j: rat(1), k: rat(0) }
    }

    pub fn unit_k() -> Quat {
        Quat { r: rat(0), i: rat(0), j: rat(0), k: rat(1) }
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.i.is_zero() && self.j.is_zero() && self.k.is_zero()
    }

    pub fn add(&self, o: &Quat) -> Quat {
        Quat {
            r: &self.r + &o.r,
            i: &self.i + &o.i,
            j: &self.j + &o.j,
            k: &self.k + &o.k,
        }
    }

    pub fn neg(&self) -> Quat {
        Quat { r: -&self.r, i: -&self.i, j: -&self.j, k: -&self.k }
    }

    pub fn mul(&self, o: &Quat) -> Quat {
        let (a, b, c, d) = (&self.r, &self.i, &self.j, &self.k);
        let (e, f, g, h) = (&o.r, &o.i, &o.j, &o.k);
        Quat {
            r: a * e - b * f - c * g - d * h,
            i: a * f + b * e + c * h - d * g,
            j: a * g - b * h + c * e + d * f,
            k: a * h + b * g - c * f + d * e,
        }
    }

    pub fn conj(&self) -> Quat {
        Quat { r: self.r.clone(), i: -&self.i, j: -&self.j, k: -&self.k }
    }

    /// Reduced norm r^2 + i^2 + j^2 + k^2; zero only at zero, which is
    /// what makes the ring a division ring.
    pub fn norm(&self) -> BigRational {
        &self.r * &self.r + &self.i * &self.i + &self.j * &self.j + &self.k * &self.k
    }

    pub fn inv(&self) -> Option<Quat> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conj();
        Some(Quat { r: c.r / &n, i: c.i / &n, j: c.j / &n, k: c.k / &n })
    }
}
