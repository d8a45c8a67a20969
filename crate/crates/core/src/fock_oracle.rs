//! Brute-force three-mode Fock-space model of the lossy NOON measurement.
//!
//! Modes are `a` (reference arm), `b` (lossy arm) and `V` (vacuum port of the
//! loss beam splitter). The detection operator is applied term by term in the
//! occupation-number basis, and moments are read off as inner products. Nothing
//! here calls into [`crate::analytics`].

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::analytics::LossChannel;
use crate::error::{Error, Result};

/// Largest photon number the oracle accepts.
pub const ORACLE_MAX_N: u64 = 64;

/// Amplitudes with smaller magnitude are dropped from the support.
pub const AMPLITUDE_FLOOR: f64 = 1e-300;

/// Photon counts in modes `a`, `b` and `V`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occupation {
    pub n_a: u64,
    pub n_b: u64,
    pub n_v: u64,
}

impl Occupation {
    pub const fn new(n_a: u64, n_b: u64, n_v: u64) -> Self {
        Self { n_a, n_b, n_v }
    }

    pub fn total(&self) -> u64 {
        self.n_a + self.n_b + self.n_v
    }
}

/// Finite superposition of three-mode occupation states.
#[derive(Debug, Clone, PartialEq)]
pub struct FockKet {
    amps: BTreeMap<Occupation, Complex64>,
    photon_cap: u64,
}

impl FockKet {
    pub fn empty(photon_cap: u64) -> Self {
        Self { amps: BTreeMap::new(), photon_cap }
    }

    /// Adds `amp` to the component at `occ`. Components whose total exceeds
    /// the cap are rejected.
    pub fn add(&mut self, occ: Occupation, amp: Complex64) -> Result<()> {
        if occ.total() > self.photon_cap {
            return Err(Error::PhotonContentMismatch { n: self.photon_cap, found: occ.total() });
        }
        let slot = self.amps.entry(occ).or_insert(Complex64::new(0.0, 0.0));
        *slot += amp;
        if slot.norm() < AMPLITUDE_FLOOR {
            self.amps.remove(&occ);
        }
        Ok(())
    }

    pub fn from_components<I>(photon_cap: u64, components: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Occupation, Complex64)>,
    {
        let mut ket = Self::empty(photon_cap);
        for (occ, amp) in components {
            ket.add(occ, amp)?;
        }
        Ok(ket)
    }

    pub fn photon_cap(&self) -> u64 {
        self.photon_cap
    }

    pub fn amplitude(&self, occ: &Occupation) -> Complex64 {
        self.amps.get(occ).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Occupation, &Complex64)> {
        self.amps.iter()
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.values().map(|a| a.norm_sqr()).sum()
    }

    /// Largest total photon number carried by any component.
    pub fn max_total(&self) -> u64 {
        self.amps.keys().map(Occupation::total).max().unwrap_or(0)
    }
}

/// `sum conj(x) y` over the shared support.
pub fn inner(x: &FockKet, y: &FockKet) -> Complex64 {
    let (small, large, flip) = if x.len() <= y.len() { (x, y, false) } else { (y, x, true) };
    let s: Complex64 = small
        .amps
        .iter()
        .filter_map(|(occ, a)| large.amps.get(occ).map(|b| a.conj() * b))
        .sum();
    // the sum above is <small|large>
    if flip {
        s.conj()
    } else {
        s
    }
}

fn check_oracle_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroPhotons);
    }
    if n > ORACLE_MAX_N {
        return Err(Error::OracleCapExceeded { n, cap: ORACLE_MAX_N });
    }
    Ok(())
}

/// `(|N,0> + e^{iN phi} |0,N>)/sqrt 2` in modes `a, b`, with `V` in vacuum.
pub fn build_noon_input(n: u64, phi: f64) -> Result<FockKet> {
    check_oracle_n(n)?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    FockKet::from_components(
        n,
        [
            (Occupation::new(n, 0, 0), Complex64::new(h, 0.0)),
            (Occupation::new(0, n, 0), Complex64::from_polar(h, n as f64 * phi)),
        ],
    )
}

/// Exact binomial coefficient; valid for `n <= 64`.
pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * u128::from(n - i) / u128::from(i + 1);
    }
    c
}

fn sqrt_binomial(n: u64, k: u64) -> f64 {
    (binomial(n, k) as f64).sqrt()
}

/// Normalization in front of the lossy detection operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DetectorNormalization {
    /// `1/sqrt(N!)`, consistent with normalized Fock states.
    #[default]
    Factorial,
    /// `1/sqrt(N)`. Not physical; kept so the verification harness can be
    /// shown to catch a wrong prefactor.
    SqrtN,
}

/// Phase convention for the reflection coefficient of the loss beam splitter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReflectionPhase {
    /// `r = i sqrt(1 - eta)`
    #[default]
    Imaginary,
    /// `r = -sqrt(1 - eta)`
    NegativeReal,
}

/// Beam-splitter coefficients `t = sqrt(eta) e^{i theta_t}` and `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSplitter {
    pub t: Complex64,
    pub r: Complex64,
}

impl BeamSplitter {
    pub fn new(ch: &LossChannel, phase: ReflectionPhase) -> Self {
        let t = Complex64::from_polar(ch.eta().sqrt(), ch.theta_t());
        let rm = (1.0 - ch.eta()).sqrt();
        let r = match phase {
            ReflectionPhase::Imaginary => Complex64::new(0.0, rm),
            ReflectionPhase::NegativeReal => Complex64::new(-rm, 0.0),
        };
        Self { t, r }
    }
}

/// The detection operator `A'_N` expressed on modes `a, b, V`:
///
/// `c [ (t* b^dag + r* V^dag)^N |0,0><N,0|_{ab} + |N,0><0,0|_{ab} (t b + r V)^N ]`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossyDetector {
    n: u64,
    bs: BeamSplitter,
    normalization: DetectorNormalization,
}

impl LossyDetector {
    pub fn new(n: u64, ch: &LossChannel) -> Result<Self> {
        Self::with_conventions(n, ch, ReflectionPhase::default(), DetectorNormalization::default())
    }

    pub fn with_conventions(
        n: u64,
        ch: &LossChannel,
        phase: ReflectionPhase,
        normalization: DetectorNormalization,
    ) -> Result<Self> {
        check_oracle_n(n)?;
        Ok(Self { n, bs: BeamSplitter::new(ch, phase), normalization })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Extra factor relative to the `1/sqrt(N!)` normalization, folded into
    /// every coefficient below.
    fn norm_correction(&self) -> f64 {
        match self.normalization {
            DetectorNormalization::Factorial => 1.0,
            // sqrt(N!)/sqrt(N) = sqrt((N-1)!)
            DetectorNormalization::SqrtN => (1..self.n).map(|i| i as f64).product::<f64>().sqrt(),
        }
    }

    /// Applies the operator; the result is generally unnormalized.
    pub fn apply(&self, ket: &FockKet) -> Result<FockKet> {
        let n = self.n;
        let found = ket.max_total();
        if found > n {
            return Err(Error::PhotonContentMismatch { n, found });
        }
        let corr = self.norm_correction();
        let (t, r) = (self.bs.t, self.bs.r);
        let (tc, rc) = (t.conj(), r.conj());
        let mut out = FockKet::empty(n);

        for (occ, &amp) in ket.iter() {
            // creation branch: |N,0>_{ab} -> |0,0>_{ab}, then (t* b^dag + r* V^dag)^N
            if occ.n_a == n && occ.n_b == 0 {
                let nv = occ.n_v;
                for k in 0..=n {
                    let m = n - k;
                    // C(N,k) sqrt(k!) sqrt((nv+m)!/nv!) / sqrt(N!)
                    let mag = sqrt_binomial(n, k) * sqrt_binomial(nv + m, m) * corr;
                    let c = amp * tc.powu(k as u32) * rc.powu(m as u32) * mag;
                    if c.norm() >= AMPLITUDE_FLOOR {
                        out.add(Occupation::new(0, k, nv + m), c)?;
                    }
                }
            }
            // annihilation branch: (t b + r V)^N followed by projection onto
            // |0,0>_{ab}, which keeps only b^{n_b} V^{N-n_b}
            if occ.n_a == 0 && occ.n_b <= n && occ.n_b + occ.n_v >= n {
                let k = occ.n_b;
                let m = n - k;
                // C(N,k) sqrt(k!) sqrt(nv!/(nv-m)!) / sqrt(N!)
                let mag = sqrt_binomial(n, k) * sqrt_binomial(occ.n_v, m) * corr;
                let c = amp * t.powu(k as u32) * r.powu(m as u32) * mag;
                if c.norm() >= AMPLITUDE_FLOOR {
                    out.add(Occupation::new(n, 0, occ.n_v - m), c)?;
                }
            }
        }
        Ok(out)
    }
}

/// `A'_N |ket>` with the default conventions.
pub fn apply_detector(ket: &FockKet, n: u64, ch: &LossChannel) -> Result<FockKet> {
    LossyDetector::new(n, ch)?.apply(ket)
}

/// Mean and variance of the detection operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleMoments {
    pub mean: f64,
    pub variance: f64,
}

/// Moments of a given detector on the NOON input at phase `phi`.
pub fn detector_moments(det: &LossyDetector, phi: f64) -> Result<OracleMoments> {
    let psi = build_noon_input(det.n(), phi)?;
    let a_psi = det.apply(&psi)?;
    let mean = inner(&psi, &a_psi).re;
    // A' is Hermitian, so <A'^2> = ||A' psi||^2
    let second = inner(&a_psi, &a_psi).re;
    Ok(OracleMoments { mean, variance: second - mean * mean })
}

/// Mean and variance of `A'_N` in the lossy NOON state, by explicit
/// Fock-space arithmetic.
pub fn oracle_moments(n: u64, ch: &LossChannel, phi: f64) -> Result<OracleMoments> {
    detector_moments(&LossyDetector::new(n, ch)?, phi)
}
