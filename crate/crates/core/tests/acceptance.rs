//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Criteria listed in `KNOWN_FAILURES` are evaluated like every other one and
//! reported as FAIL; they do not fail the run, but an unexpected pass does, so
//! the list cannot go stale.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use diatomic_spectra::radial::{curves, kratzer_energy, MorseSpectrum};
use diatomic_spectra::verify::{self, Suite, VerifyOptions};
use diatomic_spectra::{
    angular_eigenvalue, bundled_reference, morse_nmax, morse_width, nu_k_roots, oscillation_quanta,
    pekeris_coefficients, reproduce, solve_radial_fd, AngularChannel, Catalog, GridSpec,
    PotentialKind,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

/// Criteria that cannot be met with the published inputs.
const KNOWN_FAILURES: &[u32] = &[2];

type Criterion = (u32, &'static str, fn(&Catalog) -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn catalog_widths(cat: &Catalog) -> Outcome {
    let mut worst = (0.0_f64, String::new());
    for p in &cat.molecules {
        let rel = (morse_width(p) / p.a - 1.0).abs();
        if rel > worst.0 {
            worst = (rel, p.name.clone());
        }
    }
    outcome(
        worst.0 <= 2e-3,
        format!(
            "max relative width difference {:.3}% ({}), limit 0.2%",
            worst.0 * 100.0,
            worst.1
        ),
    )
}

fn reference_reproduction(cat: &Catalog) -> Outcome {
    let start = Instant::now();
    let report = reproduce(cat, &bundled_reference(), 1e-3, None).expect("reference recomputes");
    let elapsed = start.elapsed();
    let graded = report.graded().count();
    let within = report.passed_count();
    let anchors = reproduce(cat, &bundled_reference(), 2e-4, Some("ScH")).expect("ScH recomputes");
    let anchor_ok = anchors.cells.iter().filter(|c| {
        let k = &c.cell;
        (k.n, k.ntilde, k.m, k.a, k.b) == (0, 0, 0, 1.0, 9.0)
    });
    let anchor_ok: Vec<bool> = anchor_ok.map(|c| c.passed).collect();
    let flagged = report.flagged().count();
    let passed = report.cells.len() == 360
        && flagged == 2
        && within >= 358
        && anchor_ok.len() == 2
        && anchor_ok.iter().all(|&b| b)
        && elapsed < Duration::from_secs(1);
    let failing: Vec<String> = report
        .failures()
        .map(|c| {
            let k = &c.cell;
            format!(
                "{} {} ({},{},{},{},{})",
                k.molecule, k.potential, k.n, k.ntilde, k.m, k.a, k.b
            )
        })
        .collect();
    let mut detail = format!(
        "{within}/{graded} graded cells within 1e-3 eV (need 358), {flagged} flagged, anchors {}, max |delta| {:.2e} eV, {:?}",
        if anchor_ok.iter().all(|&b| b) { "ok" } else { "off" },
        report.max_abs_delta().unwrap_or(f64::NAN),
        elapsed
    );
    if !failing.is_empty() {
        detail.push_str(&format!("; outside: {}", failing.join(", ")));
    }
    outcome(passed, detail)
}

fn bound_counts(cat: &Catalog) -> Outcome {
    let expected = [
        ("ScH", 20),
        ("TiH", 20),
        ("VH", 20),
        ("CrH", 17),
        ("MnH", 14),
        ("CuLi", 70),
        ("TiC", 71),
        ("NiC", 50),
        ("ScN", 100),
        ("ScF", 131),
    ];
    let sol = angular_eigenvalue(&AngularChannel::new(10, 10, 1.0, 9.0).unwrap());
    let mut wrong = Vec::new();
    for (name, count) in expected {
        let got = morse_nmax(cat.get(name).unwrap(), &sol)
            .unwrap()
            .bound_count;
        if got != count {
            wrong.push(format!("{name}: {got} != {count}"));
        }
    }
    outcome(
        wrong.is_empty(),
        if wrong.is_empty() {
            "all ten counts exact".to_string()
        } else {
            wrong.join(", ")
        },
    )
}

fn kratzer_oracle(cat: &Catalog) -> Outcome {
    let mut worst = 0.0_f64;
    let mut slowest = Duration::ZERO;
    let mut converged = true;
    for name in ["ScH", "CuLi"] {
        let p = cat.get(name).unwrap();
        for (nt, m, a, b) in [(0, 0, 1.0, 9.0), (3, 2, 1.0, 1.0)] {
            let sol = angular_eigenvalue(&AngularChannel::new(nt, m, a, b).unwrap());
            let grid = GridSpec::radial_default(p, PotentialKind::Kratzer, 4096).unwrap();
            let start = Instant::now();
            let r = solve_radial_fd(
                |r: f64| curves::kratzer(p, r) + curves::centrifugal(p, sol.e_theta, r),
                p.mu,
                &grid,
                5,
            )
            .unwrap();
            slowest = slowest.max(start.elapsed());
            converged &= r.is_converged();
            for (n, e) in r.eigenvalues.iter().enumerate() {
                worst = worst.max((e - kratzer_energy(p, n as u32, &sol)).abs());
            }
        }
    }
    outcome(
        worst <= 1e-3 && converged && slowest < Duration::from_secs(10),
        format!("max |delta| {worst:.2e} eV over 5 levels × 4 cases at 4096 points, converged {converged}, slowest solve {slowest:?}"),
    )
}

fn morse_pekeris_oracle(cat: &Catalog) -> Outcome {
    let mut worst = 0.0_f64;
    let mut converged = true;
    let mut slowest = Duration::ZERO;
    let sol = angular_eigenvalue(&AngularChannel::new(0, 0, 1.0, 9.0).unwrap());
    for name in ["ScH", "MnH"] {
        let p = cat.get(name).unwrap();
        let coef = pekeris_coefficients(p.reduced_width()).unwrap();
        let spec = MorseSpectrum::new(p, &sol).unwrap();
        let grid = GridSpec::radial_default(p, PotentialKind::Morse, 4096).unwrap();
        let start = Instant::now();
        let r = solve_radial_fd(
            |r: f64| curves::morse(p, r) + curves::pekeris_centrifugal(p, &coef, sol.e_theta, r),
            p.mu,
            &grid,
            4,
        )
        .unwrap();
        slowest = slowest.max(start.elapsed());
        converged &= r.is_converged();
        for (n, e) in r.eigenvalues.iter().enumerate() {
            worst = worst.max((e - spec.energy(n as u32).unwrap()).abs());
        }
    }
    outcome(
        worst <= 1e-3 && converged && slowest < Duration::from_secs(10),
        format!("max |delta| {worst:.2e} eV for n = 0..3 on ScH, MnH, converged {converged}, slowest solve {slowest:?}"),
    )
}

fn angular_oracle(cat: &Catalog) -> Outcome {
    let start = Instant::now();
    let opts = VerifyOptions {
        suite: Suite::Angular,
        ..VerifyOptions::default()
    };
    let r = verify::run(cat, &opts).unwrap();
    let elapsed = start.elapsed();
    let legendre: Vec<f64> = r
        .checks
        .iter()
        .filter(|c| c.case == "A=0 B=0 m=0 even")
        .map(|c| c.expected)
        .collect();
    let closed_form_cases = r.checks.iter().filter(|c| !c.case.contains('ε')).count();
    let passed = r.outcome == verify::Outcome::Pass
        && legendre == [0.0, 6.0, 20.0]
        && closed_form_cases == 3 * 2 * 2 * 4 + 6
        && elapsed < Duration::from_secs(60);
    outcome(
        passed,
        format!(
            "{} checks (ñ 0..3 × m 0..2 × A,B ∈ {{1,9}}, Legendre, ε/2), max relative delta {:.2e}, {elapsed:?}",
            r.checks.len(),
            r.checks
                .iter()
                .map(|c| c.delta.abs() / c.expected.abs().max(1.0))
                .fold(0.0, f64::max)
        ),
    )
}

fn property_suites(cat: &Catalog) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();

    for p in &cat.molecules {
        let alpha = p.reduced_width();
        let c = pekeris_coefficients(alpha).unwrap();
        let ok = (c.d0 + c.d1 + c.d2 - 1.0).abs() <= 1e-10
            && (alpha * c.d1 + 2.0 * alpha * c.d2 - 2.0).abs() <= 1e-9
            && (alpha * alpha * c.d1 + 4.0 * alpha * alpha * c.d2 - 6.0).abs() <= 1e-8;
        if !ok {
            failures.push(format!("pekeris {}", p.name));
        }
    }

    let mut runner = TestRunner::new(Config {
        cases: 1000,
        ..Config::default()
    });
    let nu = runner.run(
        &(0.0..100.0_f64, 0.0..100.0_f64, -50.0..500.0_f64),
        |(at, b, e)| {
            let k = nu_k_roots(at, b, e).unwrap();
            prop_assert!(k.discriminant().abs() <= 1e-10 * (k.beta_q * k.beta_q).max(1.0));
            Ok(())
        },
    );
    if let Err(e) = nu {
        failures.push(format!("nu discriminant: {e}"));
    }

    let channel = (0u32..20, -20i32..=20, 0.0..50.0_f64, 0.0..50.0_f64);
    let symmetry = runner.run(&channel, |(n, m, a, b)| {
        let plus = angular_eigenvalue(&AngularChannel::new(n, m, a, b).unwrap());
        let minus = angular_eigenvalue(&AngularChannel::new(n, -m, a, b).unwrap());
        prop_assert_eq!(plus, minus);
        Ok(())
    });
    if let Err(e) = symmetry {
        failures.push(format!("m symmetry: {e}"));
    }

    let round_trip = runner.run(&channel, |(n, m, a, b)| {
        let l = angular_eigenvalue(&AngularChannel::new(n, m, a, b).unwrap()).ell_tilde;
        prop_assert_eq!(oscillation_quanta(l, m, a, b).unwrap(), n);
        Ok(())
    });
    if let Err(e) = round_trip {
        failures.push(format!("quanta round trip: {e}"));
    }

    let molecules = cat.molecules.clone();
    let monotone = runner.run(
        &(
            0..molecules.len(),
            0u32..6,
            -5i32..=5,
            0.0..10.0_f64,
            0.0..10.0_f64,
        ),
        |(i, nt, m, a, b)| {
            let p = &molecules[i];
            let sol = angular_eigenvalue(&AngularChannel::new(nt, m, a, b).unwrap());
            for n in 0..20 {
                prop_assert!(kratzer_energy(p, n + 1, &sol) > kratzer_energy(p, n, &sol));
            }
            if let Ok(spec) = MorseSpectrum::new(p, &sol) {
                for n in 1..spec.bound.bound_count {
                    prop_assert!(spec.energy(n).unwrap() > spec.energy(n - 1).unwrap());
                }
            }
            Ok(())
        },
    );
    if let Err(e) = monotone {
        failures.push(format!("monotone in n: {e}"));
    }

    let elapsed = start.elapsed();
    let passed = failures.is_empty() && elapsed < Duration::from_secs(10);
    outcome(
        passed,
        if failures.is_empty() {
            format!("pekeris identities, NU discriminant ×1000, m ↔ −m, quanta round trip, monotone in n; {elapsed:?}")
        } else {
            failures.join("; ")
        },
    )
}

fn main() -> ExitCode {
    let cat = Catalog::bundled();
    let criteria: [Criterion; 7] = [
        (1, "catalog widths", catalog_widths),
        (2, "reference table reproduction", reference_reproduction),
        (3, "bound-state counts", bound_counts),
        (4, "Kratzer oracle", kratzer_oracle),
        (5, "Morse–Pekeris oracle", morse_pekeris_oracle),
        (6, "angular oracle", angular_oracle),
        (7, "property suites", property_suites),
    ];
    let mut unexpected = Vec::new();
    for (id, name, check) in criteria {
        let o = check(&cat);
        let known = KNOWN_FAILURES.contains(&id);
        let tag = match (o.passed, known) {
            (true, false) => "PASS",
            (false, false) => "FAIL",
            (false, true) => "FAIL (known)",
            (true, true) => "PASS (listed as known failure)",
        };
        println!("criterion {id} {tag}: {name}: {}", o.detail);
        if o.passed == known {
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected results for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
