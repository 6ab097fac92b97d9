//! Elements of K = F_q(θ) as reduced fractions.

use crate::error::{Error, Result};
use crate::fq::{Fq, FqElem};
use crate::poly::PolyA;

/// `num/den` with `den` monic and coprime to `num`. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FracK {
    num: PolyA,
    den: PolyA,
}

impl FracK {
    pub fn new(num: PolyA, den: PolyA, fq: &Fq) -> Result<FracK> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(FracK::zero());
        }
        let g = num.gcd(&den, fq);
        let mut n = num.div_exact(&g, fq)?;
        let mut d = den.div_exact(&g, fq)?;
        let inv = fq.inv(d.lead()).expect("nonzero");
        n = n.scale(inv, fq);
        d = d.scale(inv, fq);
        Ok(FracK { num: n, den: d })
    }
    pub fn zero() -> FracK {
        FracK { num: PolyA::zero(), den: PolyA::one() }
    }
    pub fn one() -> FracK {
        FracK::from_poly(PolyA::one())
    }
    pub fn from_poly(a: PolyA) -> FracK {
        FracK { num: a, den: PolyA::one() }
    }
    pub fn num(&self) -> &PolyA {
        &self.num
    }
    pub fn den(&self) -> &PolyA {
        &self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    /// The polynomial value when the denominator is 1.
    pub fn as_poly(&self) -> Option<&PolyA> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn add(&self, o: &FracK, fq: &Fq) -> FracK {
        if self.den == o.den {
            return FracK::new(self.num.add(&o.num, fq), self.den.clone(), fq).expect("nonzero den");
        }
        let n = self.num.mul(&o.den, fq).add(&o.num.mul(&self.den, fq), fq);
        FracK::new(n, self.den.mul(&o.den, fq), fq).expect("nonzero den")
    }
    pub fn neg(&self, fq: &Fq) -> FracK {
        FracK { num: self.num.neg(fq), den: self.den.clone() }
    }
    pub fn sub(&self, o: &FracK, fq: &Fq) -> FracK {
        self.add(&o.neg(fq), fq)
    }
    pub fn mul(&self, o: &FracK, fq: &Fq) -> FracK {
        FracK::new(self.num.mul(&o.num, fq), self.den.mul(&o.den, fq), fq).expect("nonzero den")
    }
    pub fn scale(&self, c: FqElem, fq: &Fq) -> FracK {
        FracK { num: self.num.scale(c, fq), den: if c.is_zero() { PolyA::one() } else { self.den.clone() } }
    }
    pub fn inv(&self, fq: &Fq) -> Result<FracK> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        FracK::new(self.den.clone(), self.num.clone(), fq)
    }
    pub fn div(&self, o: &FracK, fq: &Fq) -> Result<FracK> {
        Ok(self.mul(&o.inv(fq)?, fq))
    }
    pub fn pow(&self, n: u64, fq: &Fq) -> FracK {
        FracK { num: self.num.pow(n, fq), den: self.den.pow(n, fq) }
    }

    /// `num/den` in canonical text form.
    pub fn emit(&self, fq: &Fq) -> String {
        format!("{}/{}", self.num.emit(fq), self.den.emit(fq))
    }
    pub fn parse(s: &str, fq: &Fq) -> Result<FracK> {
        let (n, d) = s.split_once('/').ok_or_else(|| Error::Parse(format!("missing '/' in {s:?}")))?;
        FracK::new(PolyA::parse(n, fq)?, PolyA::parse(d, fq)?, fq)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb(q: u32) -> impl Strategy<Value = (Vec<u8>, Vec<u8>)> {
        (prop::collection::vec(0..q as u8, 0..8), prop::collection::vec(0..q as u8, 1..8))
    }

    fn build(v: (Vec<u8>, Vec<u8>), fq: &Fq) -> FracK {
        let n = PolyA::from_coeffs(v.0.into_iter().map(FqElem).collect());
        let mut d = PolyA::from_coeffs(v.1.into_iter().map(FqElem).collect());
        if d.is_zero() {
            d = PolyA::one();
        }
        FracK::new(n, d, fq).unwrap()
    }

    #[test]
    fn normalises() {
        let fq = Fq::with_order(3).unwrap();
        let x = FracK::new(PolyA::parse("0,2", &fq).unwrap(), PolyA::parse("0,0,2", &fq).unwrap(), &fq).unwrap();
        assert_eq!(x.emit(&fq), "1/0,1");
        assert_eq!(FracK::parse("1/0,1", &fq).unwrap(), x);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn field_laws(a in arb(5), b in arb(5), c in arb(5)) {
            let fq = Fq::with_order(5).unwrap();
            let (a, b, c) = (build(a, &fq), build(b, &fq), build(c, &fq));
            prop_assert_eq!(a.mul(&b.add(&c, &fq), &fq), a.mul(&b, &fq).add(&a.mul(&c, &fq), &fq));
            prop_assert_eq!(a.add(&b, &fq).add(&c, &fq), a.add(&b.add(&c, &fq), &fq));
            if !a.is_zero() {
                prop_assert_eq!(a.mul(&a.inv(&fq).unwrap(), &fq), FracK::one());
            }
            prop_assert_eq!(FracK::parse(&a.emit(&fq), &fq).unwrap(), a);
        }
    }
}
