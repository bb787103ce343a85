// Copyright 2026 The dephasim Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex matrix exponential by Pade scaling and squaring.
//!
//! Matrices are held as separate real and imaginary parts so every product
//! runs on the fast real `gemm`; a part that is identically zero is skipped.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Backward-error thresholds for Pade degrees 3, 5, 7, 9 and 13 in double precision.
const THETA: [f64; 5] = [
    1.495_585_217_958_292e-2,
    2.539_398_330_063_23e-1,
    9.504_178_996_162_932e-1,
    2.097_847_961_257_068,
    5.371_920_351_148_152,
];

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0];
const B9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const B13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

#[derive(Clone)]
struct Split {
    re: Option<DMatrix<f64>>,
    im: Option<DMatrix<f64>>,
    n: usize,
}

fn nonzero(m: DMatrix<f64>) -> Option<DMatrix<f64>> {
    if m.iter().all(|&x| x == 0.0) {
        None
    } else {
        Some(m)
    }
}

fn add_opt(a: Option<DMatrix<f64>>, b: Option<DMatrix<f64>>) -> Option<DMatrix<f64>> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a + b),
        (a, None) => a,
        (None, b) => b,
    }
}

fn mul_opt(a: &Option<DMatrix<f64>>, b: &Option<DMatrix<f64>>) -> Option<DMatrix<f64>> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a * b),
        _ => None,
    }
}

impl Split {
    fn from_complex(m: &DMatrix<Complex64>) -> Self {
        Split {
            re: nonzero(m.map(|z| z.re)),
            im: nonzero(m.map(|z| z.im)),
            n: m.nrows(),
        }
    }

    fn to_complex(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.n, self.n, |i, j| {
            Complex64::new(
                self.re.as_ref().map_or(0.0, |r| r[(i, j)]),
                self.im.as_ref().map_or(0.0, |m| m[(i, j)]),
            )
        })
    }

    fn mul(&self, o: &Split) -> Split {
        let rr = mul_opt(&self.re, &o.re);
        let ii = mul_opt(&self.im, &o.im).map(|m| -m);
        let ri = mul_opt(&self.re, &o.im);
        let ir = mul_opt(&self.im, &o.re);
        Split {
            re: add_opt(rr, ii),
            im: add_opt(ri, ir),
            n: self.n,
        }
    }

    fn scale(&self, c: f64) -> Split {
        Split {
            re: self.re.as_ref().map(|m| m * c),
            im: self.im.as_ref().map(|m| m * c),
            n: self.n,
        }
    }

    fn add(self, o: Split) -> Split {
        Split {
            re: add_opt(self.re, o.re),
            im: add_opt(self.im, o.im),
            n: self.n,
        }
    }

    fn identity(n: usize, c: f64) -> Split {
        Split {
            re: Some(DMatrix::identity(n, n) * c),
            im: None,
            n,
        }
    }

    /// `sum_k c_k P_k` over the given even powers.
    fn combo(powers: &[&Split], coeffs: &[f64], n: usize) -> Split {
        let mut acc = Split::identity(n, 0.0);
        for (p, &c) in powers.iter().zip(coeffs) {
            acc = acc.add(p.scale(c));
        }
        acc
    }
}

fn one_norm(m: &DMatrix<Complex64>) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Numerator and denominator parts `(U, V)` of the degree-`m` approximant.
fn pade(a: &Split, m: usize) -> (Split, Split) {
    let n = a.n;
    let a2 = a.mul(a);
    if m == 13 {
        let b = &B13;
        let a4 = a2.mul(&a2);
        let a6 = a4.mul(&a2);
        let inner_u = a6.mul(&Split::combo(&[&a6, &a4, &a2], &[b[13], b[11], b[9]], n));
        let u = a.mul(
            &inner_u
                .add(Split::combo(&[&a6, &a4, &a2], &[b[7], b[5], b[3]], n))
                .add(Split::identity(n, b[1])),
        );
        let inner_v = a6.mul(&Split::combo(&[&a6, &a4, &a2], &[b[12], b[10], b[8]], n));
        let v = inner_v
            .add(Split::combo(&[&a6, &a4, &a2], &[b[6], b[4], b[2]], n))
            .add(Split::identity(n, b[0]));
        return (u, v);
    }
    let b: &[f64] = match m {
        3 => &B3,
        5 => &B5,
        7 => &B7,
        _ => &B9,
    };
    let mut powers = vec![Split::identity(n, 1.0), a2.clone()];
    while powers.len() <= m / 2 {
        let next = powers.last().expect("nonempty").mul(&a2);
        powers.push(next);
    }
    let mut odd = Split::identity(n, 0.0);
    let mut even = Split::identity(n, 0.0);
    for (k, p) in powers.iter().enumerate() {
        odd = odd.add(p.scale(b[2 * k + 1]));
        even = even.add(p.scale(b[2 * k]));
    }
    (a.mul(&odd), even)
}

/// `e^A` for a square complex matrix.
pub fn expm(a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm needs a square matrix");
    if n == 0 {
        return a.clone();
    }
    let norm = one_norm(a);
    let (degree, squarings) = match THETA[..4].iter().position(|&t| norm <= t) {
        Some(i) => ([3, 5, 7, 9][i], 0),
        None => (13, (norm / THETA[4]).log2().ceil().max(0.0) as u32),
    };
    let scaled = Split::from_complex(a).scale(0.5f64.powi(squarings as i32));
    let (u, v) = pade(&scaled, degree);
    let p = v.clone().add(u.clone()).to_complex();
    let q = v.add(u.scale(-1.0)).to_complex();
    let r = q.lu().solve(&p).expect("Pade denominator is nonsingular for scaled input");
    let mut r = Split::from_complex(&r);
    for _ in 0..squarings {
        r = r.mul(&r);
    }
    r.to_complex()
}
