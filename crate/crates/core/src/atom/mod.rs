//! Sodium level data, transition dipoles and free-space decay rates.
//!
//! The tables shipped with the crate (level energies, reduced dipole matrix
//! elements, per-channel fibre indices) live in plain-text files embedded at
//! compile time; [`AtomData::builtin`] parses them once.  Alternative tables
//! can be supplied through [`AtomData::from_tables`] to study other species
//! or element sets without recompiling.
//!
//! A decay *channel* is a pair of fine-structure levels connected by an
//! electric-dipole transition.  Within a channel, the sub-transitions
//! `|j m⟩ → |j' m+q⟩` for `q ∈ {-1, 0, +1}` carry dipole amplitudes obtained
//! from the orbital reduced element by standard angular-momentum recoupling;
//! their squares sum to an `m`-independent line strength.

pub mod wigner;

use std::collections::HashMap;
use std::fmt;

use crate::consts;
use crate::error::{Error, Result};
use crate::halfint::Half;
use crate::C64;

use wigner::{clebsch_gordan, wigner_6j};

/// Spin of the single valence electron.
const SPIN: Half = Half::HALF;

/// A fine-structure level `n l_j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Level {
    pub n: u32,
    pub l: u32,
    pub j: Half,
}

fn letter_of(l: u32) -> char {
    match l {
        0 => 's',
        1 => 'p',
        2 => 'd',
        3 => 'f',
        4 => 'g',
        5 => 'h',
        _ => '?',
    }
}

fn l_of_letter(c: char) -> Option<u32> {
    match c.to_ascii_lowercase() {
        's' => Some(0),
        'p' => Some(1),
        'd' => Some(2),
        'f' => Some(3),
        'g' => Some(4),
        'h' => Some(5),
        _ => None,
    }
}

impl Level {
    pub fn new(n: u32, l: u32, j: Half) -> Result<Self> {
        if l >= n {
            return Err(Error::Domain(format!("l = {l} must be below n = {n}")));
        }
        let valid_j = (j - Half::from_int(l as i32)).abs() == SPIN;
        if !valid_j {
            return Err(Error::Domain(format!(
                "j = {j} is not l ± 1/2 for l = {}",
                letter_of(l)
            )));
        }
        Ok(Level { n, l, j })
    }

    /// Parse a label such as `10s1/2` or `3p3/2`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Data(format!("malformed level label {text:?} (want e.g. \"10s1/2\")"));
        let letter_pos = text.find(|c: char| c.is_ascii_alphabetic()).ok_or_else(bad)?;
        let (n_part, rest) = text.split_at(letter_pos);
        let n: u32 = n_part.parse().map_err(|_| bad())?;
        let mut chars = rest.chars();
        let letter = chars.next().ok_or_else(bad)?;
        let l = l_of_letter(letter)
            .ok_or_else(|| Error::Data(format!("unknown orbital letter {letter:?} in {text:?}")))?;
        let j = Half::parse(chars.as_str()).ok_or_else(bad)?;
        Level::new(n, l, j)
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.n, letter_of(self.l), self.j)
    }
}

/// A level together with a magnetic quantum number, e.g. `10s1/2:+1/2`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct AtomicState {
    pub level: Level,
    pub mj: Half,
}

impl AtomicState {
    pub fn new(level: Level, mj: Half) -> Result<Self> {
        if mj.abs().twice() > level.j.twice() || !(level.j + mj).is_integer() {
            return Err(Error::Domain(format!(
                "m_j = {mj} is not a projection of j = {}",
                level.j
            )));
        }
        Ok(AtomicState { level, mj })
    }

    /// Parse `"10s1/2:+1/2"`; the projection defaults to `+j` when omitted.
    pub fn parse(text: &str) -> Result<Self> {
        match text.split_once(':') {
            Some((lvl, mj)) => {
                let level = Level::parse(lvl)?;
                let mj = Half::parse(mj)
                    .ok_or_else(|| Error::Data(format!("malformed m_j in state label {text:?}")))?;
                AtomicState::new(level, mj)
            }
            None => {
                let level = Level::parse(text)?;
                Ok(AtomicState { level, mj: level.j })
            }
        }
    }
}

impl fmt::Display for AtomicState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.mj.twice() >= 0 { "+" } else { "" };
        write!(f, "{}:{}{}", self.level, sign, self.mj)
    }
}

/// One electric-dipole decay channel between fine-structure levels.
#[derive(Clone, Copy, Debug)]
pub struct Channel {
    pub upper: Level,
    pub lower: Level,
    /// Transition energy in cm^-1.
    pub energy_cm: f64,
    /// Transition angular frequency in rad/s.
    pub omega: f64,
    /// Vacuum wavelength in m.
    pub wavelength: f64,
    /// Orbital reduced dipole element in units of e·a0 (signed).
    pub reduced_orbital: f64,
}

impl Channel {
    /// Sum of squared sub-transition dipoles Σ_q d_q², in (C·m)²; independent
    /// of the upper-state projection.
    pub fn line_strength(&self) -> f64 {
        let six_j = wigner_6j(
            Half::from_int(self.upper.l as i32),
            SPIN,
            self.upper.j,
            self.lower.j,
            Half::ONE,
            Half::from_int(self.lower.l as i32),
        );
        let d = consts::E_A0 * self.reduced_orbital;
        d * d * f64::from(self.lower.j.multiplicity()) * six_j * six_j
    }

    /// Free-space decay rate of this channel in 1/s.
    pub fn vacuum_rate(&self) -> f64 {
        let c3 = consts::C_LIGHT.powi(3);
        self.omega.powi(3) * self.line_strength()
            / (3.0 * std::f64::consts::PI * consts::EPS_0 * consts::HBAR * c3)
    }

    /// Dipole amplitude d_q (in C·m) of the sub-transition
    /// `|j m⟩ → |j' m+q⟩`; zero if the projection is not allowed.
    pub fn dipole_component(&self, mj: Half, q: i32) -> f64 {
        let qh = Half::from_int(q);
        let cg = clebsch_gordan(self.upper.j, mj, Half::ONE, qh, self.lower.j, mj + qh);
        if cg == 0.0 || cg.is_nan() {
            return 0.0;
        }
        let six_j = wigner_6j(
            Half::from_int(self.upper.l as i32),
            SPIN,
            self.upper.j,
            self.lower.j,
            Half::ONE,
            Half::from_int(self.lower.l as i32),
        );
        // Phase (-1)^(j + s + l'), with j + s an integer by construction.
        let expo = (self.upper.j + SPIN).twice() / 2 + self.lower.l as i32;
        let sign = if expo % 2 == 0 { 1.0 } else { -1.0 };
        sign * f64::from(self.upper.j.multiplicity()).sqrt()
            * six_j
            * consts::E_A0
            * self.reduced_orbital
            * cg
    }
}

/// Unit spherical basis vector for polarization `q`, as Cartesian components
/// `(x, y, z)`; a dipole with a single spherical component `d_q` points along
/// `d_q · sph_unit(q)`.
pub fn sph_unit(q: i32) -> [C64; 3] {
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    match q {
        0 => [C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
        1 => [
            C64::new(-inv_sqrt2, 0.0),
            C64::new(0.0, inv_sqrt2),
            C64::new(0.0, 0.0),
        ],
        -1 => [
            C64::new(inv_sqrt2, 0.0),
            C64::new(0.0, inv_sqrt2),
            C64::new(0.0, 0.0),
        ],
        _ => panic!("polarization index must be -1, 0 or +1"),
    }
}

/// Fibre-core refractive index as a function of vacuum wavelength.
///
/// The core material is dispersive and the decay channels of a Rydberg level
/// span the ultraviolet to the far infrared, so each channel must see the
/// index at its own transition wavelength.  The table holds `(λ, n)` samples
/// sorted by wavelength; lookups interpolate linearly in `ln λ` and clamp to
/// the nearest endpoint outside the tabulated range.
#[derive(Clone, Debug)]
pub struct Dispersion {
    /// `(wavelength in m, index)`, ascending in wavelength.
    samples: Vec<(f64, f64)>,
}

impl Dispersion {
    /// Parse a two-column table: wavelength in µm, index.
    pub fn parse(text: &str) -> Result<Self> {
        let mut samples = Vec::new();
        for (lineno, line) in data_lines(text) {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::Data(format!(
                    "index table line {lineno}: want `wavelength_um n`, got {line:?}"
                )));
            }
            let lam_um: f64 = fields[0].parse().map_err(|_| {
                Error::Data(format!("index table line {lineno}: bad wavelength {:?}", fields[0]))
            })?;
            let n1: f64 = fields[1].parse().map_err(|_| {
                Error::Data(format!("index table line {lineno}: bad index {:?}", fields[1]))
            })?;
            if !(lam_um > 0.0) || !lam_um.is_finite() {
                return Err(Error::Data(format!(
                    "index table line {lineno}: wavelength {lam_um} must be positive"
                )));
            }
            if !(n1 >= 1.0) || !n1.is_finite() {
                return Err(Error::Data(format!(
                    "index table line {lineno}: index {n1} must be >= 1"
                )));
            }
            samples.push((lam_um * 1e-6, n1));
        }
        if samples.is_empty() {
            return Err(Error::Data("index table has no data rows".into()));
        }
        for pair in samples.windows(2) {
            if pair[1].0 <= pair[0].0 {
                return Err(Error::Data(
                    "index table wavelengths must be strictly increasing".into(),
                ));
            }
        }
        Ok(Dispersion { samples })
    }

    /// Uniform index for every channel (used for vacuum checks and overrides).
    pub fn uniform(n1: f64) -> Self {
        Dispersion { samples: vec![(1e-6, n1)] }
    }

    /// Index at vacuum wavelength `wavelength` (in m).
    pub fn index_at(&self, wavelength: f64) -> f64 {
        let s = &self.samples;
        if wavelength <= s[0].0 {
            return s[0].1;
        }
        if wavelength >= s[s.len() - 1].0 {
            return s[s.len() - 1].1;
        }
        let i = s.partition_point(|&(lam, _)| lam <= wavelength) - 1;
        let (l0, n0) = s[i];
        let (l1, n1) = s[i + 1];
        let t = (wavelength / l0).ln() / (l1 / l0).ln();
        n0 + t * (n1 - n0)
    }

    /// Slope of the index with respect to angular frequency at vacuum
    /// wavelength `wavelength` (in m).  The table is piecewise linear in
    /// log-wavelength, so the slope is taken on the containing segment and is
    /// zero beyond the table's ends and for a uniform table.  Feeding this to
    /// the mode solver makes β′ the full group slope of the chromatic fibre.
    pub fn dn_domega_at(&self, wavelength: f64) -> f64 {
        let s = &self.samples;
        if s.len() < 2 || wavelength <= s[0].0 || wavelength >= s[s.len() - 1].0 {
            return 0.0;
        }
        let i = s.partition_point(|&(lam, _)| lam <= wavelength) - 1;
        let (l0, n0) = s[i];
        let (l1, n1) = s[i + 1];
        // dn/dλ on the segment, then dλ/dω = −λ/ω = −λ²/(2πc).
        let dn_dlam = (n1 - n0) / ((l1 / l0).ln() * wavelength);
        let omega = 2.0 * std::f64::consts::PI * crate::consts::C_LIGHT / wavelength;
        -dn_dlam * wavelength / omega
    }
}

/// Parsed level energies, reduced dipole elements and dispersion data.
#[derive(Clone, Debug)]
pub struct AtomData {
    energies_cm: HashMap<Level, f64>,
    /// Keyed by ((n, l) upper, (n', l') lower).
    reduced: HashMap<((u32, u32), (u32, u32)), f64>,
    pub dispersion: Dispersion,
}

/// Iterate over non-comment, non-blank lines with 1-based line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

impl AtomData {
    /// The sodium tables embedded in the crate.
    pub fn builtin() -> Self {
        Self::from_tables(
            include_str!("../../data/na_levels.dat"),
            include_str!("../../data/na_reduced_matrix_elements.dat"),
            include_str!("../../data/silica_indices.dat"),
        )
        .expect("embedded data tables parse")
    }

    pub fn from_tables(levels: &str, elements: &str, dispersion: &str) -> Result<Self> {
        let mut energies_cm = HashMap::new();
        for (lineno, line) in data_lines(levels) {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(Error::Data(format!(
                    "level table line {lineno}: want `n l j energy_cm`, got {line:?}"
                )));
            }
            let n: u32 = fields[0]
                .parse()
                .map_err(|_| Error::Data(format!("level table line {lineno}: bad n {:?}", fields[0])))?;
            let l = fields[1]
                .chars()
                .next()
                .and_then(l_of_letter)
                .ok_or_else(|| Error::Data(format!("level table line {lineno}: bad l {:?}", fields[1])))?;
            let j = Half::parse(fields[2])
                .ok_or_else(|| Error::Data(format!("level table line {lineno}: bad j {:?}", fields[2])))?;
            let e: f64 = fields[3].parse().map_err(|_| {
                Error::Data(format!("level table line {lineno}: bad energy {:?}", fields[3]))
            })?;
            let level = Level::new(n, l, j)
                .map_err(|err| Error::Data(format!("level table line {lineno}: {err}")))?;
            if energies_cm.insert(level, e).is_some() {
                return Err(Error::Data(format!("level table line {lineno}: duplicate {level}")));
            }
        }

        let mut reduced = HashMap::new();
        for (lineno, line) in data_lines(elements) {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 5 {
                return Err(Error::Data(format!(
                    "element table line {lineno}: want `n l n' l' value`, got {line:?}"
                )));
            }
            let parse_nl = |nf: &str, lf: &str| -> Result<(u32, u32)> {
                let n: u32 = nf
                    .parse()
                    .map_err(|_| Error::Data(format!("element table line {lineno}: bad n {nf:?}")))?;
                let l = lf
                    .chars()
                    .next()
                    .and_then(l_of_letter)
                    .ok_or_else(|| Error::Data(format!("element table line {lineno}: bad l {lf:?}")))?;
                Ok((n, l))
            };
            let upper = parse_nl(fields[0], fields[1])?;
            let lower = parse_nl(fields[2], fields[3])?;
            if upper.1.abs_diff(lower.1) != 1 {
                return Err(Error::Data(format!(
                    "element table line {lineno}: Δl must be ±1 for a dipole element"
                )));
            }
            let value: f64 = fields[4].parse().map_err(|_| {
                Error::Data(format!("element table line {lineno}: bad value {:?}", fields[4]))
            })?;
            if reduced.insert((upper, lower), value).is_some() {
                return Err(Error::Data(format!(
                    "element table line {lineno}: duplicate element for {}{} -> {}{}",
                    upper.0,
                    letter_of(upper.1),
                    lower.0,
                    letter_of(lower.1)
                )));
            }
        }

        Ok(AtomData {
            energies_cm,
            reduced,
            dispersion: Dispersion::parse(dispersion)?,
        })
    }

    /// Replace the dispersion table (e.g. with a uniform index).
    pub fn with_dispersion(mut self, dispersion: Dispersion) -> Self {
        self.dispersion = dispersion;
        self
    }

    pub fn energy_cm(&self, level: Level) -> Result<f64> {
        self.energies_cm
            .get(&level)
            .copied()
            .ok_or_else(|| Error::Data(format!("level {level} is not in the energy table")))
    }

    /// All known levels, sorted by energy then (n, l, j).
    pub fn levels(&self) -> Vec<Level> {
        let mut all: Vec<Level> = self.energies_cm.keys().copied().collect();
        all.sort_by(|a, b| {
            let ea = self.energies_cm[a];
            let eb = self.energies_cm[b];
            ea.partial_cmp(&eb)
                .unwrap()
                .then(a.n.cmp(&b.n))
                .then(a.l.cmp(&b.l))
                .then(a.j.twice().cmp(&b.j.twice()))
        });
        all
    }

    /// Dipole-allowed decay channels out of `upper`, sorted by descending
    /// transition energy.  Channels whose reduced element is missing from the
    /// table are skipped: the tables are expected to cover every channel that
    /// contributes measurably.
    pub fn channels_from(&self, upper: Level) -> Result<Vec<Channel>> {
        let e_up = self.energy_cm(upper)?;
        let mut out = Vec::new();
        for (&lower, &e_lo) in &self.energies_cm {
            if e_lo >= e_up || upper.l.abs_diff(lower.l) != 1 {
                continue;
            }
            // Triangle rule for (j, 1, j').
            if (upper.j - lower.j).abs().twice() > 2 {
                continue;
            }
            let Some(&red) = self.reduced.get(&((upper.n, upper.l), (lower.n, lower.l))) else {
                continue;
            };
            let energy_cm = e_up - e_lo;
            out.push(Channel {
                upper,
                lower,
                energy_cm,
                omega: consts::omega_from_cm(energy_cm),
                wavelength: consts::wavelength_from_cm(energy_cm),
                reduced_orbital: red,
            });
        }
        // A known level with no downhill dipole partner (the ground state)
        // legitimately has an empty channel list and a zero decay rate;
        // unknown levels were already rejected by the energy lookup.
        out.sort_by(|a, b| b.energy_cm.partial_cmp(&a.energy_cm).unwrap());
        Ok(out)
    }

    /// Total free-space decay rate of `level` in 1/s.
    pub fn vacuum_rate(&self, level: Level) -> Result<f64> {
        Ok(self.channels_from(level)?.iter().map(Channel::vacuum_rate).sum())
    }
}
