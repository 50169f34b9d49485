//! Exact piecewise polynomials over arbitrary-precision rationals.
//!
//! A [`PiecewisePolynomial`] is a compactly supported function given by
//! strictly increasing breakpoints b₀ < … < b_M and one polynomial per
//! interval [b_i, b_{i+1}), stored in the local variable t = x - b_i. The
//! local basis keeps coefficients small: the cascade's deep levels sit on
//! breakpoints in the hundreds, and expanding in powers of x would inflate
//! every coefficient by binomial·breakpoint^degree factors.
//!
//! Convolution comes in two exact routes:
//!
//! * [`PiecewisePolynomial::convolve`] - textbook three-phase overlap
//!   integrals per piece pair, with Beta-integral coefficients. Quadratic
//!   in pieces, cubic in degree; fine for small operands and kept as the
//!   readable reference the fast path is pinned against.
//! * [`PiecewisePolynomial::self_convolve`] - the cascade workhorse. On
//!   consecutive integer breakpoints the function is rewritten in the
//!   truncated-power basis: p = Σ_k Σ_r (J_{k,r}/r!) (x - x_k)₊^r, where
//!   J_{k,r} is the exact jump of the r-th derivative at knot x_k,
//!   extracted from the piece coefficients by integer Taylor shifts.
//!   Convolving truncated powers is elementary,
//!   (x-a)₊^r ∗ (x-b)₊^ρ = r!ρ!/(r+ρ+1)!·(x-a-b)₊^{r+ρ+1},
//!   so the square collapses to one sparse Cauchy product of the
//!   Borel-scaled jump arrays. Splines that are as smooth as their degree
//!   allows (every convolution output is) carry a single jump order per
//!   knot, so the product stays tiny even when the power-basis
//!   coefficients are thousands of bits wide. The result is converted
//!   back to local coefficients by a running Taylor shift across cells,
//!   all over a single common denominator; a mirror-symmetric input has
//!   its second half mirrored instead of recomputed.
//!
//! Nonnegativity is certified, not sampled: on each piece the polynomial
//! is rewritten in the Bernstein basis, whose coefficients bound the
//! function from below on the cell. Nonnegative Bernstein coefficients
//! prove nonnegativity outright (endpoints and interior extrema
//! included); a negative coefficient triggers exact midpoint subdivision,
//! which converges for every polynomial that is strictly positive inside
//! the cell. The certificate is therefore sound and, for the B-spline
//! pieces the cascade produces, complete at depth zero.

use crate::Error;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact compactly supported piecewise polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewisePolynomial {
    /// Strictly increasing cell boundaries; `pieces.len() + 1` entries.
    breakpoints: Vec<BigRational>,
    /// Local coefficients of the polynomial on [b_i, b_{i+1}), ascending
    /// powers of t = x - b_i. Trailing zero coefficients are trimmed.
    pieces: Vec<Vec<BigRational>>,
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(big(n))
}

/// b! for b = 0..=n as BigInt.
fn factorials(n: usize) -> Vec<BigInt> {
    let mut f = Vec::with_capacity(n + 1);
    f.push(BigInt::one());
    for k in 1..=n {
        let next = f[k - 1].clone() * big(k as i64);
        f.push(next);
    }
    f
}

/// Pascal triangle C(a, m) for a = 0..=n.
fn binomials(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    rows.push(vec![BigInt::one()]);
    for a in 1..=n {
        let prev = &rows[a - 1];
        let mut row = Vec::with_capacity(a + 1);
        row.push(BigInt::one());
        for m in 1..a {
            row.push(&prev[m - 1] + &prev[m]);
        }
        row.push(BigInt::one());
        rows.push(row);
    }
    rows
}

/// lcm(1..=n) as BigInt.
fn lcm_upto(n: usize) -> BigInt {
    let mut l = BigInt::one();
    for k in 2..=n {
        l = l.lcm(&big(k as i64));
    }
    l
}

/// p(c0 + c1 x) for dense rational coefficients, by Horner with a
/// polynomial accumulator.
fn compose_affine(p: &[BigRational], c0: &BigRational, c1: &BigRational) -> Vec<BigRational> {
    let mut acc: Vec<BigRational> = vec![BigRational::zero()];
    for a in (0..p.len()).rev() {
        // acc <- acc * (c0 + c1 x) + p_a
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        for (k, v) in acc.iter().enumerate() {
            next[k] += v * c0;
            next[k + 1] += v * c1;
        }
        next[0] += &p[a];
        while next.len() > 1 && next.last().map(Zero::is_zero).unwrap_or(false) {
            next.pop();
        }
        acc = next;
    }
    acc
}

/// Integer variant of p(1 - x): out[m] = (-1)^m Σ_{a ≥ m} C(a, m) p[a].
fn reflect_int(p: &[BigInt], binom: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = p.len();
    let mut out = vec![BigInt::zero(); n];
    for (m, slot) in out.iter_mut().enumerate() {
        let mut acc = BigInt::zero();
        for a in m..n {
            acc += &binom[a][m] * &p[a];
        }
        if m % 2 == 1 {
            acc = -acc;
        }
        *slot = acc;
    }
    out
}

/// Integer Taylor shift p(x + 1): out[m] = Σ_{a ≥ m} C(a, m) p[a].
fn shift_by_one(p: &[BigInt], binom: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = p.len();
    let mut out = vec![BigInt::zero(); n];
    for (m, slot) in out.iter_mut().enumerate() {
        let mut acc = BigInt::zero();
        for a in m..n {
            acc += &binom[a][m] * &p[a];
        }
        *slot = acc;
    }
    out
}

/// Squaring shortcut for plain coefficient convolution conv(p, p).
fn square_int(p: &[BigInt]) -> Vec<BigInt> {
    let n = p.len();
    let mut out = vec![BigInt::zero(); 2 * n - 1];
    for a in 0..n {
        if p[a].is_zero() {
            continue;
        }
        for b in (a + 1)..n {
            if p[b].is_zero() {
                continue;
            }
            out[a + b] += &p[a] * &p[b];
        }
    }
    for v in out.iter_mut() {
        *v *= big(2);
    }
    for a in 0..n {
        if !p[a].is_zero() {
            out[2 * a] += &p[a] * &p[a];
        }
    }
    out
}

impl PiecewisePolynomial {
    /// Validates breakpoints and pieces and normalises the representation
    /// (trailing zero coefficients trimmed, identically zero edge cells
    /// dropped so the support endpoints are honest).
    pub fn new(
        breakpoints: Vec<BigRational>,
        pieces: Vec<Vec<BigRational>>,
    ) -> Result<Self, Error> {
        if pieces.is_empty() {
            return Err(Error::BadPiecewise("no pieces".into()));
        }
        if breakpoints.len() != pieces.len() + 1 {
            return Err(Error::BadPiecewise(format!(
                "{} breakpoints do not delimit {} pieces",
                breakpoints.len(),
                pieces.len()
            )));
        }
        for w in breakpoints.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::BadPiecewise(
                    "breakpoints must be strictly increasing".into(),
                ));
            }
        }
        if pieces.iter().any(Vec::is_empty) {
            return Err(Error::BadPiecewise("empty coefficient list".into()));
        }
        let mut out = PiecewisePolynomial {
            breakpoints,
            pieces,
        };
        out.normalize();
        Ok(out)
    }

    /// The indicator of the interval (lo, hi).
    pub fn indicator(lo: BigRational, hi: BigRational) -> Result<Self, Error> {
        PiecewisePolynomial::new(vec![lo, hi], vec![vec![BigRational::one()]])
    }

    fn normalize(&mut self) {
        for p in &mut self.pieces {
            while p.len() > 1 && p.last().map(Zero::is_zero).unwrap_or(false) {
                p.pop();
            }
        }
        while self.pieces.len() > 1
            && self.pieces.first().map(|p| p.iter().all(Zero::is_zero)) == Some(true)
        {
            self.pieces.remove(0);
            self.breakpoints.remove(0);
        }
        while self.pieces.len() > 1
            && self.pieces.last().map(|p| p.iter().all(Zero::is_zero)) == Some(true)
        {
            self.pieces.pop();
            self.breakpoints.pop();
        }
    }

    /// Cell boundaries.
    pub fn breakpoints(&self) -> &[BigRational] {
        &self.breakpoints
    }

    /// Local coefficient lists, one per cell.
    pub fn pieces(&self) -> &[Vec<BigRational>] {
        &self.pieces
    }

    /// Support interval (b₀, b_M). Honest after normalisation unless the
    /// function is identically zero.
    pub fn support(&self) -> (&BigRational, &BigRational) {
        (
            self.breakpoints.first().expect("validated"),
            self.breakpoints.last().expect("validated"),
        )
    }

    /// Largest piece degree.
    pub fn degree(&self) -> usize {
        self.pieces.iter().map(|p| p.len() - 1).max().unwrap_or(0)
    }

    /// Exact evaluation. Outside the support the value is 0; on interior
    /// breakpoints the right-hand piece wins (the cascade levels past the
    /// indicator are continuous, so the choice is invisible there).
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let (lo, hi) = self.support();
        if x < lo || x >= hi {
            return BigRational::zero();
        }
        // Find the cell with b_i <= x < b_{i+1}.
        let mut idx = match self.breakpoints.binary_search_by(|b| b.cmp(x)) {
            Ok(i) => i,
            Err(ins) => ins - 1,
        };
        if idx >= self.pieces.len() {
            idx = self.pieces.len() - 1;
        }
        let t = x - &self.breakpoints[idx];
        let mut acc = BigRational::zero();
        for c in self.pieces[idx].iter().rev() {
            acc = acc * &t + c;
        }
        acc
    }

    /// Integer left edge when all breakpoints are consecutive integers.
    fn unit_integer_start(&self) -> Option<BigInt> {
        let first = self.breakpoints.first()?;
        if !first.is_integer() {
            return None;
        }
        let start = first.to_integer();
        for (k, b) in self.breakpoints.iter().enumerate() {
            if !b.is_integer() || b.to_integer() != &start + big(k as i64) {
                return None;
            }
        }
        Some(start)
    }

    /// Common-denominator integer coefficient matrix, rows padded to a
    /// uniform degree: returns (rows, den, degree) with
    /// piece_i(t) = Σ_a rows[i][a] t^a / den.
    fn integer_matrix(&self) -> (Vec<Vec<BigInt>>, BigInt, usize) {
        let d = self.degree();
        let mut den = BigInt::one();
        for piece in &self.pieces {
            for c in piece {
                den = den.lcm(c.denom());
            }
        }
        let rows = self
            .pieces
            .iter()
            .map(|piece| {
                let mut row: Vec<BigInt> = piece
                    .iter()
                    .map(|c| c.numer() * (&den / c.denom()))
                    .collect();
                row.resize(d + 1, BigInt::zero());
                row
            })
            .collect();
        (rows, den, d)
    }

    /// Exact integral ∫ p over the whole line.
    pub fn integral(&self) -> BigRational {
        if self.unit_integer_start().is_some() {
            // Unit cells: ∫ piece = Σ_a c_a/(a+1), summed over a single
            // common denominator with one reduction at the end.
            let (rows, den, d) = self.integer_matrix();
            let l = lcm_upto(d + 1);
            let weights: Vec<BigInt> = (0..=d).map(|a| &l / big(a as i64 + 1)).collect();
            let mut total = BigInt::zero();
            for row in &rows {
                for (a, c) in row.iter().enumerate() {
                    if !c.is_zero() {
                        total += c * &weights[a];
                    }
                }
            }
            return BigRational::new(total, den * l);
        }
        let mut total = BigRational::zero();
        for (i, piece) in self.pieces.iter().enumerate() {
            let w = &self.breakpoints[i + 1] - &self.breakpoints[i];
            let mut wpow = w.clone();
            for (a, c) in piece.iter().enumerate() {
                total += c * &wpow / rat_int(a as i64 + 1);
                wpow *= &w;
            }
        }
        total
    }

    /// Exact ∫ p² over the whole line.
    pub fn l2_squared(&self) -> BigRational {
        if self.unit_integer_start().is_some() {
            // Unit cells: square each integer row once, integrate the
            // square as a weighted dot product, reduce once at the end.
            let (rows, den, d) = self.integer_matrix();
            let l = lcm_upto(2 * d + 2);
            let weights: Vec<BigInt> =
                (0..=2 * d).map(|c| &l / big(c as i64 + 1)).collect();
            let mut total = BigInt::zero();
            for row in &rows {
                let sq = square_int(row);
                for (c, v) in sq.iter().enumerate() {
                    if !v.is_zero() {
                        total += v * &weights[c];
                    }
                }
            }
            return BigRational::new(total, &den * &den * l);
        }
        let mut total = BigRational::zero();
        for (i, piece) in self.pieces.iter().enumerate() {
            let w = &self.breakpoints[i + 1] - &self.breakpoints[i];
            let den = piece
                .iter()
                .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            let ints: Vec<BigInt> = piece
                .iter()
                .map(|c| c.numer() * (&den / c.denom()))
                .collect();
            let sq = square_int(&ints);
            let den_sq = BigRational::from_integer(&den * &den);
            let mut wpow = w.clone();
            let mut cell = BigRational::zero();
            for (c, v) in sq.iter().enumerate() {
                if !v.is_zero() {
                    cell += BigRational::from_integer(v.clone()) * &wpow / rat_int(c as i64 + 1);
                }
                wpow *= &w;
            }
            total += cell / den_sq;
        }
        total
    }

    /// True when the function is mirror-symmetric about its support
    /// midpoint, checked exactly cell against reflected cell.
    pub fn is_symmetric(&self) -> bool {
        let n = self.pieces.len();
        let one = BigRational::one();
        for i in 0..n.div_ceil(2) {
            let j = n - 1 - i;
            // Widths must mirror for the comparison to make sense.
            let wi = &self.breakpoints[i + 1] - &self.breakpoints[i];
            let wj = &self.breakpoints[j + 1] - &self.breakpoints[j];
            if wi != wj {
                return false;
            }
            // P_j(t) must equal P_i(w - t).
            let reflected = compose_affine(&self.pieces[i], &wi, &(BigRational::zero() - &one));
            let mut a = self.pieces[j].clone();
            let mut b = reflected;
            while a.len() > 1 && a.last().map(Zero::is_zero).unwrap_or(false) {
                a.pop();
            }
            while b.len() > 1 && b.last().map(Zero::is_zero).unwrap_or(false) {
                b.pop();
            }
            if a != b {
                return false;
            }
        }
        true
    }

    /// Exact convolution (p * q)(y) = ∫ p(t) q(y - t) dt.
    ///
    /// General-purpose three-phase algorithm over rationals; cost grows
    /// with (pieces of p) x (pieces of q) x degree³. The cascade's deep
    /// levels go through [`Self::self_convolve`] instead; this path stays
    /// the readable reference the fast path is tested against.
    pub fn convolve(&self, other: &PiecewisePolynomial) -> Result<PiecewisePolynomial, Error> {
        // Output breakpoints: all pairwise sums, sorted and deduplicated.
        let mut sums: Vec<BigRational> = Vec::new();
        for a in &self.breakpoints {
            for b in &other.breakpoints {
                sums.push(a + b);
            }
        }
        sums.sort();
        sums.dedup();
        let cells = sums.len() - 1;
        let out_deg = self.degree() + other.degree() + 1;
        let mut out_pieces: Vec<Vec<BigRational>> =
            vec![vec![BigRational::zero(); out_deg + 1]; cells];

        let fact = factorials(out_deg + 1);
        // β(a, b) = a! b! / (a + b + 1)!.
        let beta = |a: usize, b: usize| -> BigRational {
            BigRational::new(&fact[a] * &fact[b], fact[a + b + 1].clone())
        };

        let one = BigRational::one();
        let neg_one = BigRational::zero() - &one;

        for (i, p_piece) in self.pieces.iter().enumerate() {
            let wp = &self.breakpoints[i + 1] - &self.breakpoints[i];
            for (j, q_piece) in other.pieces.iter().enumerate() {
                let wq = &other.breakpoints[j + 1] - &other.breakpoints[j];
                let start = &self.breakpoints[i] + &other.breakpoints[j];
                let width = &wp + &wq;
                let m1 = wp.clone().min(wq.clone());
                let m2 = wp.clone().max(wq.clone());

                // Phase A on [0, m1]: Σ p_a q_b β(a,b) v^{a+b+1}.
                let mut phase_a = vec![BigRational::zero(); out_deg + 1];
                for (a, pa) in p_piece.iter().enumerate() {
                    if pa.is_zero() {
                        continue;
                    }
                    for (b, qb) in q_piece.iter().enumerate() {
                        if qb.is_zero() {
                            continue;
                        }
                        phase_a[a + b + 1] += pa * qb * beta(a, b);
                    }
                }

                // Phase C on [m2, wp + wq], polynomial in z = width - v:
                // the same Beta form on the reflected pieces.
                let p_rev = compose_affine(p_piece, &wp, &neg_one);
                let q_rev = compose_affine(q_piece, &wq, &neg_one);
                let mut phase_c = vec![BigRational::zero(); out_deg + 1];
                for (a, pa) in p_rev.iter().enumerate() {
                    if pa.is_zero() {
                        continue;
                    }
                    for (b, qb) in q_rev.iter().enumerate() {
                        if qb.is_zero() {
                            continue;
                        }
                        phase_c[a + b + 1] += pa * qb * beta(a, b);
                    }
                }

                // Phase B on [m1, m2]: the shorter factor is fully inside.
                // With moments μ_l = ∫₀^{w} τ^l S(τ) dτ of the short piece S,
                // F(v) = Σ_b L_b Σ_{l≤b} C(b,l) (-1)^l μ_l v^{b-l}, where L
                // is the longer piece (its local variable equals v - τ up to
                // the same orientation used in phase A).
                let phase_b = if m1 != m2 {
                    let (short, long, w_short) = if wp <= wq {
                        (p_piece, q_piece, &wp)
                    } else {
                        (q_piece, p_piece, &wq)
                    };
                    let max_l = long.len();
                    let mut moments = Vec::with_capacity(max_l);
                    for l in 0..max_l {
                        let mut mu = BigRational::zero();
                        let mut wpow = pow_rat(w_short, l + 1);
                        for (a, c) in short.iter().enumerate() {
                            mu += c * &wpow / rat_int((a + l) as i64 + 1);
                            wpow *= w_short;
                        }
                        moments.push(mu);
                    }
                    let binom = binomials(long.len());
                    let mut fb = vec![BigRational::zero(); out_deg + 1];
                    for (b, lb) in long.iter().enumerate() {
                        if lb.is_zero() {
                            continue;
                        }
                        for l in 0..=b {
                            let mut term =
                                lb * &moments[l] * BigRational::from_integer(binom[b][l].clone());
                            if l % 2 == 1 {
                                term = BigRational::zero() - term;
                            }
                            fb[b - l] += term;
                        }
                    }
                    Some(fb)
                } else {
                    None
                };

                // Scatter the three phases onto the output cells.
                let pa_hi = &start + &m1;
                let pb_hi = &start + &m2;
                let pc_hi = &start + &width;
                for (s, cell_piece) in out_pieces.iter_mut().enumerate() {
                    let c_lo = &sums[s];
                    let c_hi = &sums[s + 1];
                    if c_hi <= &start || c_lo >= &pc_hi {
                        continue;
                    }
                    let (poly, flipped): (&[BigRational], bool) = if c_hi <= &pa_hi {
                        (&phase_a, false)
                    } else if c_lo >= &pb_hi {
                        (&phase_c, true)
                    } else {
                        (
                            phase_b
                                .as_deref()
                                .expect("cell inside the middle phase requires it"),
                            false,
                        )
                    };
                    // v = x + (c_lo - start), or z = (pc_hi - c_lo) - x.
                    let local = if flipped {
                        compose_affine(poly, &(&pc_hi - c_lo), &neg_one)
                    } else {
                        compose_affine(poly, &(c_lo - &start), &one)
                    };
                    for (k, v) in local.iter().enumerate() {
                        if !v.is_zero() {
                            cell_piece[k] += v;
                        }
                    }
                }
            }
        }

        PiecewisePolynomial::new(sums, out_pieces)
    }

    /// Exact self-convolution p * p.
    ///
    /// Dispatches to the truncated-power fast path when the breakpoints
    /// are consecutive integers (the cascade always is); falls back to the
    /// generic algorithm otherwise. Both paths compute the same function;
    /// property tests pin them against each other.
    pub fn self_convolve(&self) -> Result<PiecewisePolynomial, Error> {
        if let Some(start) = self.unit_integer_start() {
            self.self_convolve_unit(start)
        } else {
            self.convolve(self)
        }
    }

    fn self_convolve_unit(&self, start: BigInt) -> Result<PiecewisePolynomial, Error> {
        let (rows, den, d) = self.integer_matrix();
        let n = rows.len();
        let out_deg = 2 * d + 1;
        let fact = factorials(out_deg);
        let binom = binomials(out_deg + 1);

        // Symmetric inputs only need the first half assembled; the rest is
        // mirrored at the end. Detected on the integer matrix.
        let symmetric = (0..n.div_ceil(2)).all(|i| {
            let mirrored = reflect_int(&rows[i], &binom);
            mirrored == rows[n - 1 - i]
        });

        // Truncated-power (Newton) coefficients: den·p = Σ_k Σ_r nu_k[r]
        // (x - start - k)₊^r, where nu_k[r] is the jump of the local
        // coefficient of t^r at knot k. Interior knots of a maximally
        // smooth spline carry a single nonzero order, which is what makes
        // this representation fast; the extraction itself is fully general
        // and handles kinks and jumps of any order. Stored sparse and
        // Borel-scaled: (r, r!·nu_k[r]).
        let mut newton: Vec<Vec<(usize, BigInt)>> = Vec::with_capacity(n + 1);
        let mut carried: Vec<BigInt> = vec![BigInt::zero(); d + 1];
        for row in rows.iter().chain(std::iter::once(&vec![BigInt::zero(); d + 1])) {
            let mut entries = Vec::new();
            for r in 0..=d {
                let delta = &row[r] - &carried[r];
                if !delta.is_zero() {
                    entries.push((r, delta * &fact[r]));
                }
            }
            newton.push(entries);
            carried = shift_by_one(row, &binom);
        }

        // Sparse Cauchy square of the jump arrays: the pair (k,r),(l,ρ)
        // feeds knot k+l at power r+ρ+1 with weight r!·nu·ρ!·nu (the Borel
        // scales fold the r!ρ!/(r+ρ+1)! Beta factor into one division by
        // (r+ρ+1)! applied during reconstruction).
        let out_cells = 2 * n;
        let assemble = if symmetric { n } else { out_cells };
        let mut w: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); out_deg + 1]; assemble];
        for k in 0..=n.min(newton.len() - 1) {
            for l in k..newton.len() {
                let s = k + l;
                if s >= assemble {
                    break;
                }
                let double = k != l;
                for (r, vk) in &newton[k] {
                    for (rho, vl) in &newton[l] {
                        let mut term = vk * vl;
                        if double {
                            term *= big(2);
                        }
                        w[s][r + rho + 1] += term;
                    }
                }
            }
        }

        // Reconstruction: walking cells left to right, the local polynomial
        // on cell u is the previous one Taylor-shifted by 1 plus knot u's
        // own powers. Everything lives over den²·(2d+1)!; the per-power
        // weight (2d+1)!/m! undoes the Borel scale.
        let kw: Vec<BigInt> = (0..=out_deg).map(|m| &fact[out_deg] / &fact[m]).collect();
        let full_den = &den * &den * &fact[out_deg];
        let mut numer_cells: Vec<Vec<BigInt>> = Vec::with_capacity(out_cells);
        let mut running: Vec<BigInt> = vec![BigInt::zero(); out_deg + 1];
        for w_knot in w.iter() {
            running = shift_by_one(&running, &binom);
            for (m, v) in w_knot.iter().enumerate() {
                if !v.is_zero() {
                    running[m] += v * &kw[m];
                }
            }
            numer_cells.push(running.clone());
        }
        if symmetric {
            for u_out in n..out_cells {
                let mirrored = reflect_int(&numer_cells[out_cells - 1 - u_out], &binom);
                numer_cells.push(mirrored);
            }
        }

        let out_start = &start * big(2);
        let breakpoints: Vec<BigRational> = (0..=out_cells)
            .map(|k| BigRational::from_integer(&out_start + big(k as i64)))
            .collect();
        let pieces: Vec<Vec<BigRational>> = numer_cells
            .into_iter()
            .map(|numer| {
                numer
                    .into_iter()
                    .map(|v| {
                        if v.is_zero() {
                            BigRational::zero()
                        } else {
                            BigRational::new(v, full_den.clone())
                        }
                    })
                    .collect()
            })
            .collect();
        PiecewisePolynomial::new(breakpoints, pieces)
    }

    /// Verifies exact continuity across every interior breakpoint: the
    /// left piece evaluated at its right edge must equal the right
    /// piece's value at its left edge. Convolutions of integrable
    /// compactly supported functions are continuous, so every cascade
    /// level past the indicator must pass.
    pub fn certify_continuity(&self) -> Result<(), String> {
        for i in 0..self.pieces.len() - 1 {
            let w = &self.breakpoints[i + 1] - &self.breakpoints[i];
            let mut left = BigRational::zero();
            for c in self.pieces[i].iter().rev() {
                left = left * &w + c;
            }
            let right = self.pieces[i + 1][0].clone();
            if left != right {
                return Err(format!(
                    "jump at breakpoint {}: {} from the left, {} from the right",
                    self.breakpoints[i + 1],
                    left,
                    right
                ));
            }
        }
        Ok(())
    }

    /// Bernstein-certificate nonnegativity check.
    ///
    /// Per piece the local polynomial is rewritten in the scaled Bernstein
    /// basis: with integer coefficients c̃ the vector
    /// B̃_j = Σ_{a≤j} C(d-a, j-a) c̃_a equals C(d,j) times the Bernstein
    /// ordinate b_j, so the signs agree. All B̃_j ≥ 0 certifies p ≥ 0 on
    /// the cell; otherwise the true ordinates (up to the positive factor
    /// d!) are subdivided exactly at the midpoint (de Casteljau over
    /// integers) up to a depth limit. Returns the detail of the first
    /// piece that cannot be certified.
    pub fn certify_nonnegative(&self) -> Result<(), String> {
        const MAX_DEPTH: u32 = 12;
        for (i, piece) in self.pieces.iter().enumerate() {
            let den = piece
                .iter()
                .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            let ints: Vec<BigInt> = piece
                .iter()
                .map(|c| c.numer() * (&den / c.denom()))
                .collect();
            let d = ints.len() - 1;
            let binom = binomials(d + 1);
            let mut bern = vec![BigInt::zero(); d + 1];
            for (j, slot) in bern.iter_mut().enumerate() {
                let mut acc = BigInt::zero();
                for a in 0..=j {
                    acc += &binom[d - a][j - a] * &ints[a];
                }
                *slot = acc;
            }
            if bern.iter().all(|b| !b.is_negative()) {
                continue;
            }
            // A scaled coefficient went negative: switch to true ordinates
            // (common positive factor d!) and subdivide. The de Casteljau
            // recursion is only valid on ordinates, not on the
            // binomial-scaled vector above.
            let fact = factorials(d);
            let ords: Vec<BigInt> = bern
                .iter()
                .enumerate()
                .map(|(j, b)| b * &fact[j] * &fact[d - j])
                .collect();
            if let Err(detail) = certify_bernstein(&ords, 0, MAX_DEPTH) {
                return Err(format!(
                    "piece {i} on [{}, {}]: {detail}",
                    self.breakpoints[i],
                    self.breakpoints[i + 1]
                ));
            }
        }
        Ok(())
    }
}

fn pow_rat(base: &BigRational, exp: usize) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..exp {
        out *= base;
    }
    out
}

/// Certifies a Bernstein ordinate vector (all entries ≥ 0, or exact
/// midpoint subdivision until both halves certify).
fn certify_bernstein(bern: &[BigInt], depth: u32, max_depth: u32) -> Result<(), String> {
    if bern.iter().all(|b| !b.is_negative()) {
        return Ok(());
    }
    // A negative endpoint ordinate is an actual negative value.
    if bern.first().map(Signed::is_negative).unwrap_or(false)
        || bern.last().map(Signed::is_negative).unwrap_or(false)
    {
        return Err(format!(
            "negative endpoint value at subdivision depth {depth}"
        ));
    }
    if depth >= max_depth {
        return Err(format!(
            "negative Bernstein coefficient persists at depth {depth}"
        ));
    }
    // Integer de Casteljau halving: rows scaled by 2^r keep everything in
    // BigInt; both halves are rescaled by a common positive factor, so the
    // signs are preserved.
    let d = bern.len() - 1;
    let mut rows: Vec<Vec<BigInt>> = vec![bern.to_vec()];
    for r in 1..=d {
        let prev = &rows[r - 1];
        let row: Vec<BigInt> = (0..prev.len() - 1)
            .map(|k| &prev[k] + &prev[k + 1])
            .collect();
        rows.push(row);
    }
    let mut left = Vec::with_capacity(d + 1);
    let mut right = Vec::with_capacity(d + 1);
    for r in 0..=d {
        // left_r = rows[r][0] · 2^{d-r}, right_r = rows[d-r][r] · 2^{r}:
        // common positive scale 2^d against the true ordinates.
        left.push(&rows[r][0] * BigInt::from(1u8) << (d - r));
        right.push(&rows[d - r][r] * BigInt::from(1u8) << r);
    }
    certify_bernstein(&left, depth + 1, max_depth)?;
    certify_bernstein(&right, depth + 1, max_depth)
}
