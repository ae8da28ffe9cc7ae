//! Serde adapters that write complex numbers as `{"re": .., "im": ..}` objects.

use num_complex::Complex;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
struct ReIm<T> {
    re: T,
    im: T,
}

pub fn serialize<S, T>(z: &Complex<T>, s: S) -> Result<S::Ok, S::Error>
where
    S: Serializer,
    T: Serialize + Copy,
{
    ReIm { re: z.re, im: z.im }.serialize(s)
}

pub fn deserialize<'de, D, T>(d: D) -> Result<Complex<T>, D::Error>
where
    D: Deserializer<'de>,
    T: Deserialize<'de>,
{
    let ReIm { re, im } = ReIm::deserialize(d)?;
    Ok(Complex::new(re, im))
}

pub mod vec {
    use super::ReIm;
    use num_complex::Complex;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S, T>(zs: &[Complex<T>], s: S) -> Result<S::Ok, S::Error>
    where
        S: Serializer,
        T: Serialize + Copy,
    {
        s.collect_seq(zs.iter().map(|z| ReIm { re: z.re, im: z.im }))
    }

    pub fn deserialize<'de, D, T>(d: D) -> Result<Vec<Complex<T>>, D::Error>
    where
        D: Deserializer<'de>,
        T: Deserialize<'de>,
    {
        let raw: Vec<ReIm<T>> = Vec::deserialize(d)?;
        Ok(raw.into_iter().map(|z| Complex::new(z.re, z.im)).collect())
    }
}
