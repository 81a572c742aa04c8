//! Cross-checks of the closed forms against the finite-difference oracle.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angular::{angular_eigenvalue, AngularChannel, Parity};
use crate::catalog::{Catalog, MoleculeParams};
use crate::error::{Error, Result};
use crate::oracle::{solve_angular_fd, solve_radial_fd, GridSpec, OracleResult, ANGULAR_EPSILON};
use crate::radial::{curves, kratzer_energy, pekeris_coefficients, MorseSpectrum, PotentialKind};

pub const RADIAL_TOLERANCE_EV: f64 = 1e-3;
pub const ANGULAR_TOLERANCE: f64 = 1e-3;
/// Relative change allowed when the angular clipping ε is halved.
pub const EPSILON_TOLERANCE: f64 = 1e-4;
pub const DEFAULT_RADIAL_POINTS: usize = 4096;
pub const DEFAULT_ANGULAR_POINTS: usize = 2048;

/// Oscillation quanta and magnetic numbers of the radial cross-checks.
pub const RADIAL_CHANNELS: [(u32, i32); 4] = [(0, 0), (1, 0), (2, 1), (3, 2)];
/// (A, B) pairs shared by the radial and angular suites.
pub const STRENGTHS: [(f64, f64); 3] = [(1.0, 9.0), (1.0, 1.0), (9.0, 1.0)];
/// Radial levels n = 0..RADIAL_LEVELS are compared.
pub const RADIAL_LEVELS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Angular,
    Kratzer,
    MorsePekeris,
    All,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Angular => "angular",
            Suite::Kratzer => "kratzer",
            Suite::MorsePekeris => "morse-pekeris",
            Suite::All => "all",
        })
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "angular" => Ok(Suite::Angular),
            "kratzer" => Ok(Suite::Kratzer),
            "morse-pekeris" => Ok(Suite::MorsePekeris),
            "all" => Ok(Suite::All),
            other => Err(Error::Input(format!("unknown suite `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub suite: Suite,
    pub molecule: Option<String>,
    pub radial_points: usize,
    pub angular_points: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            suite: Suite::All,
            molecule: None,
            radial_points: DEFAULT_RADIAL_POINTS,
            angular_points: DEFAULT_ANGULAR_POINTS,
        }
    }
}

impl VerifyOptions {
    /// Same point count for every grid.
    pub fn with_points(mut self, points: usize) -> Self {
        self.radial_points = points;
        self.angular_points = points;
        self
    }
}

/// One closed-form value against its oracle counterpart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub suite: Suite,
    pub case: String,
    /// Level index within the case (n for radial, ñ or ℓ for angular).
    pub index: usize,
    pub expected: f64,
    /// Eigenvalue on the finest grid.
    pub oracle: f64,
    pub extrapolated: f64,
    pub delta: f64,
    pub tolerance: f64,
    /// `tolerance` is relative to max(|expected|, 1).
    pub relative: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy)]
enum Bound {
    Absolute(f64),
    /// Scaled by max(|expected|, 1).
    Relative(f64),
}

impl Check {
    fn new(
        suite: Suite,
        case: &str,
        index: usize,
        expected: f64,
        oracle: f64,
        extrapolated: f64,
        bound: Bound,
    ) -> Self {
        let (tolerance, relative) = match bound {
            Bound::Absolute(t) => (t, false),
            Bound::Relative(t) => (t, true),
        };
        let delta = oracle - expected;
        let bound = if relative {
            tolerance * expected.abs().max(1.0)
        } else {
            tolerance
        };
        Self {
            suite,
            case: case.to_string(),
            index,
            expected,
            oracle,
            extrapolated,
            delta,
            tolerance,
            relative,
            passed: delta.abs() <= bound,
        }
    }
}

/// Refinement history of one oracle solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceEntry {
    pub suite: Suite,
    pub case: String,
    pub points: usize,
    pub orders: Vec<Option<f64>>,
    pub converged: bool,
}

/// Pekeris-substituted Morse level against the true 1/r² problem.
/// Informational only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproximationGap {
    pub case: String,
    pub n: usize,
    pub pekeris_ev: f64,
    pub exact_centrifugal_ev: f64,
    pub gap_ev: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    ComparisonFailed,
    NotConverged,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub options: VerifyOptions,
    pub outcome: Outcome,
    pub checks: Vec<Check>,
    pub convergence: Vec<ConvergenceEntry>,
    pub approximation_gap: Vec<ApproximationGap>,
}

impl VerifyReport {
    pub fn max_delta(&self, suite: Suite) -> Option<f64> {
        self.checks
            .iter()
            .filter(|c| suite.includes(c.suite))
            .map(|c| c.delta.abs())
            .reduce(f64::max)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn unconverged(&self) -> impl Iterator<Item = &ConvergenceEntry> {
        self.convergence.iter().filter(|c| !c.converged)
    }
}

/// Result of one case: checks, its convergence history and optional gap rows.
type CaseOutput = (Vec<Check>, Vec<ConvergenceEntry>, Vec<ApproximationGap>);

fn converged_entry(suite: Suite, case: &str, r: &OracleResult<f64>) -> ConvergenceEntry {
    ConvergenceEntry {
        suite,
        case: case.to_string(),
        points: r.grid.points,
        orders: r.orders.clone(),
        converged: r.is_converged(),
    }
}

#[derive(Debug, Clone)]
enum Job<'a> {
    Angular {
        m: i32,
        a: f64,
        b: f64,
    },
    Legendre {
        parity: Parity,
    },
    Radial {
        suite: Suite,
        mol: &'a MoleculeParams,
        ch: AngularChannel,
    },
}

fn channel_label(ch: &AngularChannel) -> String {
    format!("ñ={} m={} A={} B={}", ch.n_tilde, ch.m, ch.a, ch.b)
}

fn run_angular(m: i32, a: f64, b: f64, points: usize) -> Result<CaseOutput> {
    let case = format!("m={m} A={a} B={b}");
    let a_tilde = f64::from(m * m) + a;
    let k = RADIAL_LEVELS;
    let grid = GridSpec::angular_default(a_tilde, b, Parity::Even, points)?;
    let r = solve_angular_fd(a, b, m, &grid, k)?;
    let half =
        GridSpec::angular_with_epsilon(a_tilde, b, Parity::Even, points, ANGULAR_EPSILON / 2.0)?;
    let rh = solve_angular_fd(a, b, m, &half, k)?;
    let mut checks = Vec::new();
    for j in 0..k {
        let ch = AngularChannel::new(j as u32, m, a, b)?;
        let exact = angular_eigenvalue(&ch).e_theta;
        checks.push(Check::new(
            Suite::Angular,
            &case,
            j,
            exact,
            r.eigenvalues[j],
            r.richardson_estimate[j],
            Bound::Relative(ANGULAR_TOLERANCE),
        ));
    }
    let eps_case = format!("{case} ε/2");
    for j in 0..k {
        checks.push(Check::new(
            Suite::Angular,
            &eps_case,
            j,
            r.richardson_estimate[j],
            rh.richardson_estimate[j],
            rh.richardson_estimate[j],
            Bound::Relative(EPSILON_TOLERANCE),
        ));
    }
    let conv = vec![
        converged_entry(Suite::Angular, &case, &r),
        converged_entry(Suite::Angular, &eps_case, &rh),
    ];
    Ok((checks, conv, Vec::new()))
}

fn run_legendre(parity: Parity, points: usize) -> Result<CaseOutput> {
    let case = match parity {
        Parity::Even => "A=0 B=0 m=0 even",
        Parity::Odd => "A=0 B=0 m=0 odd",
    };
    let k = 3;
    let grid = GridSpec::angular_default(0.0, 0.0, parity, points)?;
    let r = solve_angular_fd(0.0, 0.0, 0, &grid, k)?;
    let checks = (0..k)
        .map(|j| {
            let ch = AngularChannel::with_parity(j as u32, 0, 0.0, 0.0, parity)?;
            let exact = angular_eigenvalue(&ch).e_theta;
            Ok(Check::new(
                Suite::Angular,
                case,
                j,
                exact,
                r.eigenvalues[j],
                r.richardson_estimate[j],
                Bound::Relative(ANGULAR_TOLERANCE),
            ))
        })
        .collect::<Result<_>>()?;
    Ok((
        checks,
        vec![converged_entry(Suite::Angular, case, &r)],
        Vec::new(),
    ))
}

fn run_radial(
    suite: Suite,
    p: &MoleculeParams,
    ch: &AngularChannel,
    points: usize,
) -> Result<CaseOutput> {
    let sol = angular_eigenvalue(ch);
    let e_theta = sol.e_theta;
    let k = RADIAL_LEVELS;
    let mu = p.mu;
    match suite {
        Suite::Kratzer => {
            let case = format!("{} kratzer {}", p.name, channel_label(ch));
            let grid = GridSpec::radial_default(p, PotentialKind::Kratzer, points)?;
            let v = |r: f64| curves::kratzer(p, r) + curves::centrifugal(p, e_theta, r);
            let res = solve_radial_fd(v, mu, &grid, k)?;
            let checks = (0..k)
                .map(|n| {
                    let exact = kratzer_energy(p, n as u32, &sol);
                    Check::new(
                        suite,
                        &case,
                        n,
                        exact,
                        res.eigenvalues[n],
                        res.richardson_estimate[n],
                        Bound::Absolute(RADIAL_TOLERANCE_EV),
                    )
                })
                .collect();
            Ok((
                checks,
                vec![converged_entry(suite, &case, &res)],
                Vec::new(),
            ))
        }
        Suite::MorsePekeris => {
            let case = format!("{} morse-pekeris {}", p.name, channel_label(ch));
            let spec = MorseSpectrum::new(p, &sol)?;
            let levels = k.min(spec.bound.bound_count as usize);
            if levels == 0 {
                return Err(Error::Domain(format!("{case}: no bound levels")));
            }
            let coef = pekeris_coefficients(p.reduced_width())?;
            let grid = GridSpec::radial_default(p, PotentialKind::Morse, points)?;
            let v =
                |r: f64| curves::morse(p, r) + curves::pekeris_centrifugal(p, &coef, e_theta, r);
            let res = solve_radial_fd(v, mu, &grid, levels)?;
            let exact_v = |r: f64| curves::morse(p, r) + curves::centrifugal(p, e_theta, r);
            let exact = solve_radial_fd(exact_v, mu, &grid, levels)?;
            let mut checks = Vec::new();
            let mut gap = Vec::new();
            for n in 0..levels {
                let e = spec.energy(n as u32)?;
                checks.push(Check::new(
                    suite,
                    &case,
                    n,
                    e,
                    res.eigenvalues[n],
                    res.richardson_estimate[n],
                    Bound::Absolute(RADIAL_TOLERANCE_EV),
                ));
                gap.push(ApproximationGap {
                    case: case.clone(),
                    n,
                    pekeris_ev: e,
                    exact_centrifugal_ev: exact.richardson_estimate[n],
                    gap_ev: exact.richardson_estimate[n] - e,
                });
            }
            Ok((checks, vec![converged_entry(suite, &case, &res)], gap))
        }
        _ => unreachable!("radial job with suite {suite}"),
    }
}

/// Runs the selected suites; cases are solved concurrently and reported in
/// a fixed order.
pub fn run(catalog: &Catalog, options: &VerifyOptions) -> Result<VerifyReport> {
    let molecules: Vec<&MoleculeParams> = match &options.molecule {
        Some(name) => vec![catalog
            .get(name)
            .ok_or_else(|| Error::Input(format!("unknown molecule `{name}`")))?],
        None => catalog.molecules.iter().collect(),
    };
    let mut jobs = Vec::new();
    if options.suite.includes(Suite::Angular) {
        for m in 0..=2 {
            for a in [1.0, 9.0] {
                for b in [1.0, 9.0] {
                    jobs.push(Job::Angular { m, a, b });
                }
            }
        }
        jobs.push(Job::Legendre {
            parity: Parity::Even,
        });
        jobs.push(Job::Legendre {
            parity: Parity::Odd,
        });
    }
    for suite in [Suite::Kratzer, Suite::MorsePekeris] {
        if !options.suite.includes(suite) {
            continue;
        }
        for &mol in &molecules {
            for (nt, m) in RADIAL_CHANNELS {
                for (a, b) in STRENGTHS {
                    let ch = AngularChannel::new(nt, m, a, b)?;
                    jobs.push(Job::Radial { suite, mol, ch });
                }
            }
        }
    }
    let outputs: Vec<CaseOutput> = jobs
        .par_iter()
        .map(|job| match job {
            Job::Angular { m, a, b } => run_angular(*m, *a, *b, options.angular_points),
            Job::Legendre { parity } => run_legendre(*parity, options.angular_points),
            Job::Radial { suite, mol, ch } => run_radial(*suite, mol, ch, options.radial_points),
        })
        .collect::<Result<_>>()?;
    let mut report = VerifyReport {
        options: options.clone(),
        outcome: Outcome::Pass,
        checks: Vec::new(),
        convergence: Vec::new(),
        approximation_gap: Vec::new(),
    };
    for (checks, conv, gap) in outputs {
        report.checks.extend(checks);
        report.convergence.extend(conv);
        report.approximation_gap.extend(gap);
    }
    report.outcome = if report.unconverged().next().is_some() {
        Outcome::NotConverged
    } else if report.failures().next().is_some() {
        Outcome::ComparisonFailed
    } else {
        Outcome::Pass
    };
    Ok(report)
}
