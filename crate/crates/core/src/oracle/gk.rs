//! Globally adaptive 15-point Gauss-Kronrod integration.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Debug, Clone, Copy)]
pub(crate) struct Segment {
    pub a: f64,
    pub b: f64,
    pub value: f64,
    pub err: f64,
    /// Estimate sits on the rounding floor; splitting will not help.
    pub floor: bool,
}

/// One GK15 panel with the QUADPACK error heuristic.
pub(crate) fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> Segment {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut resk = fc * WGK[7];
    let mut resg = fc * WG[3];
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let (f1, f2) = (f(c - dx), f(c + dx));
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let reskh = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let value = resk * h;
    resabs *= h.abs();
    resasc *= h.abs();
    let mut err = ((resk - resg) * h).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    let floor_err = 50.0 * f64::EPSILON * resabs;
    let mut floor = false;
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) && err <= floor_err {
        err = floor_err;
        floor = true;
    }
    if !(b - a > 4.0 * f64::EPSILON * c.abs().max(f64::MIN_POSITIVE)) {
        floor = true;
    }
    Segment {
        a,
        b,
        value,
        err,
        floor,
    }
}

struct ByErr(Segment, usize);

impl PartialEq for ByErr {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for ByErr {}
impl PartialOrd for ByErr {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for ByErr {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.err.total_cmp(&o.0.err).then(o.1.cmp(&self.1))
    }
}

/// Compensated sum.
pub(crate) fn neumaier(values: impl IntoIterator<Item = f64>) -> f64 {
    let (mut s, mut c) = (0.0f64, 0.0f64);
    for v in values {
        let t = s + v;
        if s.abs() >= v.abs() {
            c += (s - t) + v;
        } else {
            c += (v - t) + s;
        }
        s = t;
    }
    s + c
}

pub(crate) struct Adaptive {
    pub value: f64,
    pub err: f64,
    pub converged: bool,
}

/// Integrates over the union of `breaks` windows, refining the worst
/// segment until the summed error meets max(abs_tol, rel_tol·|I|).
pub(crate) fn integrate(
    f: &impl Fn(f64) -> f64,
    breaks: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_segments: usize,
) -> Adaptive {
    let mut done: Vec<Segment> = Vec::new();
    let mut heap = BinaryHeap::new();
    let mut tick = 0usize;
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            let s = gk15(f, w[0], w[1]);
            if s.floor {
                done.push(s);
            } else {
                heap.push(ByErr(s, tick));
                tick += 1;
            }
        }
    }
    // (value, error still open to refinement, error on the rounding floor)
    let sums = |done: &Vec<Segment>, heap: &BinaryHeap<ByErr>| {
        let v = neumaier(done.iter().chain(heap.iter().map(|e| &e.0)).map(|s| s.value));
        let open = neumaier(heap.iter().map(|e| e.0.err));
        let floor = neumaier(done.iter().map(|s| s.err));
        (v, open, floor)
    };
    let (mut value, mut open, _) = sums(&done, &heap);
    let mut since = 0usize;
    loop {
        let target = abs_tol.max(rel_tol * value.abs());
        let count = done.len() + heap.len();
        if !(open > target) || heap.is_empty() || count >= max_segments {
            // running sums drift; confirm with a fresh pass
            let (v, o, floor) = sums(&done, &heap);
            (value, open) = (v, o);
            let target = abs_tol.max(rel_tol * value.abs());
            if !(open > target) || heap.is_empty() || count >= max_segments {
                let mut segs: Vec<Segment> = done.iter().chain(heap.iter().map(|e| &e.0)).copied().collect();
                segs.sort_by(|x, y| x.a.total_cmp(&y.a));
                return Adaptive {
                    value: neumaier(segs.iter().map(|s| s.value)),
                    err: open + floor,
                    converged: open <= target && value.is_finite(),
                };
            }
        }
        let ByErr(s, _) = heap.pop().expect("open error implies a queued segment");
        value -= s.value;
        open -= s.err;
        let mid = 0.5 * (s.a + s.b);
        for half in [gk15(f, s.a, mid), gk15(f, mid, s.b)] {
            value += half.value;
            if half.floor {
                done.push(half);
            } else {
                open += half.err;
                heap.push(ByErr(half, tick));
                tick += 1;
            }
        }
        since += 1;
        if since % 256 == 0 {
            let (v, o, _) = sums(&done, &heap);
            (value, open) = (v, o);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let s = gk15(&|x: f64| x.powi(20), 0.0, 1.0);
        assert!((s.value - 1.0 / 21.0).abs() < 1e-15);
    }

    #[test]
    fn sqrt_singularity() {
        let r = integrate(&|x: f64| x.sqrt(), &[0.0, 1.0], 1e-15, 1e-14, 10_000);
        assert!(r.converged);
        assert!((r.value - 2.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn oscillatory() {
        let r = integrate(&|x: f64| (50.0 * x).cos(), &[0.0, 0.5, 1.0], 1e-15, 1e-14, 10_000);
        assert!((r.value - 50f64.sin() / 50.0).abs() < 1e-15);
    }
}
