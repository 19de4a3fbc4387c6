//! Serde helpers for complex numbers in `{ "re": …, "im": … }` form.

use num_complex::Complex;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
struct ReIm<T> {
    re: T,
    im: T,
}

pub mod complex {
    use super::*;

    pub fn serialize<S: Serializer, T: Serialize + Copy>(c: &Complex<T>, s: S) -> Result<S::Ok, S::Error> {
        ReIm { re: c.re, im: c.im }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>, T: Deserialize<'de>>(d: D) -> Result<Complex<T>, D::Error> {
        let v = ReIm::deserialize(d)?;
        Ok(Complex::new(v.re, v.im))
    }
}

pub mod complex_vec {
    use super::*;

    pub fn serialize<S: Serializer, T: Serialize + Copy>(v: &[Complex<T>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|c| ReIm { re: c.re, im: c.im }))
    }

    pub fn deserialize<'de, D: Deserializer<'de>, T: Deserialize<'de>>(d: D) -> Result<Vec<Complex<T>>, D::Error> {
        let v: Vec<ReIm<T>> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|c| Complex::new(c.re, c.im)).collect())
    }
}
