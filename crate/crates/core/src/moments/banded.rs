//! LU factorisation with partial pivoting for banded matrices.

use crate::error::{Error, Result};

/// Band matrix with `kl` sub- and `ku` super-diagonals, factorised in place.
///
/// Row i stores columns `i - kl ..= i + ku + kl`; the extra `kl` columns on
/// the right hold the fill-in created by row interchanges.
#[derive(Debug, Clone)]
pub struct BandLu {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    rows: Vec<f64>,
    lower: Vec<f64>,
    piv: Vec<usize>,
    factored: bool,
}

impl BandLu {
    pub fn new(n: usize, kl: usize, ku: usize) -> BandLu {
        let width = 2 * kl + ku + 1;
        BandLu {
            n,
            kl,
            ku,
            width,
            rows: vec![0.0; n * width],
            lower: vec![0.0; n * kl],
            piv: vec![0; n],
            factored: false,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn idx(&self, i: usize, c: usize) -> Option<usize> {
        let off = c as i64 - i as i64 + self.kl as i64;
        if off < 0 || off >= self.width as i64 {
            None
        } else {
            Some(i * self.width + off as usize)
        }
    }

    pub fn get(&self, i: usize, c: usize) -> f64 {
        self.idx(i, c).map_or(0.0, |k| self.rows[k])
    }

    /// Set entry (i, c); must lie inside the declared band.
    pub fn set(&mut self, i: usize, c: usize, v: f64) {
        assert!(
            c + self.kl >= i && c <= i + self.ku,
            "entry ({i}, {c}) outside the band"
        );
        let k = self.idx(i, c).expect("band index");
        self.rows[k] = v;
    }

    fn last_col(&self, k: usize) -> usize {
        (k + self.kl + self.ku).min(self.n - 1)
    }

    pub fn factor(&mut self) -> Result<()> {
        let n = self.n;
        let mut scale = 0.0f64;
        for v in &self.rows {
            scale = scale.max(v.abs());
        }
        for k in 0..n {
            let last_row = (k + self.kl).min(n - 1);
            let mut p = k;
            let mut best = self.get(k, k).abs();
            for i in k + 1..=last_row {
                let v = self.get(i, k).abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best <= f64::EPSILON * 1e-3 * scale || best == 0.0 {
                return Err(Error::Singular(f64::INFINITY));
            }
            self.piv[k] = p;
            let lc = self.last_col(k);
            if p != k {
                for c in k..=lc {
                    let a = self.get(k, c);
                    let b = self.get(p, c);
                    let ia = self.idx(k, c).expect("band");
                    self.rows[ia] = b;
                    if let Some(ib) = self.idx(p, c) {
                        self.rows[ib] = a;
                    } else {
                        debug_assert!(a == 0.0);
                    }
                }
            }
            let d = self.get(k, k);
            for i in k + 1..=last_row {
                let f = self.get(i, k) / d;
                self.lower[k * self.kl + (i - k - 1)] = f;
                if f == 0.0 {
                    continue;
                }
                let ik = self.idx(i, k).expect("band");
                self.rows[ik] = 0.0;
                for c in k + 1..=lc {
                    let u = self.get(k, c);
                    if u != 0.0 {
                        let ic = self.idx(i, c).expect("band");
                        self.rows[ic] -= f * u;
                    }
                }
            }
        }
        self.factored = true;
        Ok(())
    }

    /// Solve A x = b in place; `factor` must have succeeded.
    pub fn solve(&self, b: &mut [f64]) {
        assert!(self.factored, "solve before factor");
        let n = self.n;
        assert_eq!(b.len(), n);
        for k in 0..n {
            let p = self.piv[k];
            if p != k {
                b.swap(k, p);
            }
            let bk = b[k];
            let last_row = (k + self.kl).min(n - 1);
            for i in k + 1..=last_row {
                b[i] -= self.lower[k * self.kl + (i - k - 1)] * bk;
            }
        }
        for k in (0..n).rev() {
            let mut s = b[k];
            for c in k + 1..=self.last_col(k) {
                s -= self.get(k, c) * b[c];
            }
            b[k] = s / self.get(k, k);
        }
    }
}
