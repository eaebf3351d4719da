//! End-to-end acceptance run: one PASS/FAIL line per criterion, exit status
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use qetude::cache::{DetCache, Source};
use qetude::closedform::theorem2_value;
use qetude::discovery::{
    analyze_denominators, generate_table, synthesize_conjecture, synthesize_from_table, GuessForm, Mode,
};
use qetude::exactalg::text::{parse_nrational, parse_qpoly};
use qetude::exactalg::{rat, rational_equal, series_invert, QPoly, QSeries, Rational};
use qetude::lehmer::{det_oracle, det_prefix};
use qetude::qseries::{
    rr_product_truncated, sequence_rpartitions, series_to_xqpoly, specialization_report, substitute_x,
    theorem1_truncated,
};
use qetude::reproduce::{reproduce, Fault};
use qetude::verifier::{
    check_certificate, check_coefficient_identity, check_operator_numeric, check_recurrence_numeric,
    solve_certificate, Recurrence,
};
use qetude::Error;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: qetude::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

const SEQUENCE: [u64; 20] =
    [1, 2, 4, 7, 13, 23, 41, 72, 127, 222, 388, 677, 1179, 2052, 3569, 6203, 10778, 18722, 32513, 56455];

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let prefix = lib(det_prefix(12))?;
    for n in 1..=12 {
        let o = lib(det_oracle(n))?;
        ensure(o == prefix[n as usize - 1], || format!("n={n}: oracle {o} vs recurrence {}", prefix[n as usize - 1]))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(20), || format!("took {elapsed:?}"))
}

fn closed_form_matches() -> Check {
    let prefix = lib(det_prefix(40))?;
    for n in 1..=40 {
        ensure(lib(theorem2_value(n))? == prefix[n as usize - 1], || format!("first difference at n={n}"))?;
    }
    Ok(())
}

fn tables_reproduced() -> Check {
    let report = lib(reproduce(Some("x1-list,x2-list"), None))?;
    ensure(report.items.len() == 2, || "expected two items".into())?;
    match report.first_mismatch() {
        None => Ok(()),
        Some(m) => Err(format!("{}: expected {} got {}", m.item, m.expected, m.got)),
    }
}

fn andrews_pipeline() -> Check {
    let report = lib(synthesize_conjecture(Mode::Andrews, 5, 20))?;
    ensure(report.holdout_verified, || "holdout not verified".into())?;
    let displayed = ["-GP(n-2,1)", "q^2*GP(n-4,2)", "-q^6*GP(n-6,3)", "q^12*GP(n-8,4)", "-q^20*GP(n-10,5)"];
    for a in 1..=5u32 {
        let t = &report.terms[a as usize];
        ensure(t.render() == displayed[a as usize - 1], || format!("a={a}: {}", t.render()))?;
        let sign = if a % 2 == 0 { 1 } else { -1 };
        let shape = t.form == GuessForm::Gaussian { m_offset: -2 * i64::from(a), n_param: a };
        ensure(shape && t.sign == sign && t.q_shift == a * (a - 1), || format!("a={a}: fields {t:?}"))?;
    }
    Ok(())
}

fn ansatz_pipeline() -> Check {
    let report = lib(synthesize_conjecture(Mode::Ansatz, 5, 24))?;
    let bullets = [
        "(N-q)/(q*(1-q))",
        "(N-q^2)*(N-q^3)/(q^3*(1+q)*(1-q)^2)",
        "-(N-q^3)*(N-q^4)*(N-q^5)/(q^6*(1+q)*(q^2+q+1)*(q-1)^3)",
        "(N-q^4)*(N-q^5)*(N-q^6)*(N-q^7)/(q^10*(q^2+1)*(q-1)^4*(1+q)^2*(q^2+q+1))",
        "-(N-q^5)*(N-q^6)*(N-q^7)*(N-q^8)*(N-q^9)/(q^15*(q-1)^5*(q^4+q^3+q^2+q+1)*(1+q)^2*(q^2+q+1)*(q^2+1))",
    ];
    for a in 1..=5usize {
        let GuessForm::Rational(r) = &report.terms[a].form else { return Err(format!("a={a}: not rational")) };
        let want = lib(parse_nrational(bullets[a - 1]))?;
        ensure(rational_equal(r, &want), || format!("a={a}: got {r}"))?;
    }
    let ratios = lib(analyze_denominators(&report))?;
    let want: Vec<QPoly> =
        ["q^2-q^4", "q^3-q^6", "q^4-q^8", "q^5-q^10"].iter().map(|s| parse_qpoly(s).unwrap()).collect();
    ensure(ratios == want, || format!("ratios {ratios:?}"))?;
    ensure(report.ratio_signs.as_deref() == Some(&[1, 1, 1, 1][..]), || format!("signs {:?}", report.ratio_signs))
}

fn proof_mechanized() -> Check {
    let rec = lib(check_recurrence_numeric(40, theorem2_value))?;
    ensure(rec.holds, || format!("recurrence fails at n={:?}", rec.first_failure))?;
    for a in 1..=8 {
        ensure(lib(check_coefficient_identity(a))?, || format!("coefficient identity fails at a={a}"))?;
    }
    let lehmer = Recurrence::lehmer();
    let cert = lib(solve_certificate(&lehmer, 4))?;
    ensure(check_certificate(&lehmer, &cert).holds, || format!("solved certificate {} does not check", cert.value))
}

fn stabilization() -> Check {
    let prefix = lib(det_prefix(30))?;
    for n in 3..=30u32 {
        let t = series_to_xqpoly(&theorem1_truncated(n - 2));
        let d = prefix[n as usize - 1].truncate_q(n - 2);
        ensure(t == d, || format!("n={n}: series {t} vs determinant {d}"))?;
    }
    Ok(())
}

fn oeis_tie_in() -> Check {
    let want: Vec<Rational> = SEQUENCE.iter().map(|&v| rat(v as i64)).collect();
    let inv = lib(series_invert(&substitute_x(&theorem1_truncated(20), &rat(1), 1)))?;
    ensure(inv.coeffs()[1..=20] == want[..], || format!("reciprocal gives {:?}", &inv.coeffs()[1..=20]))?;
    let counts = lib(sequence_rpartitions(-1, 20))?;
    let want: Vec<BigUint> = SEQUENCE.iter().map(|&v| BigUint::from(v)).collect();
    ensure(counts == want, || format!("r-partition counts {counts:?}"))
}

/// Partitions of `n` into parts `<= max` with consecutive parts differing by at least 2.
fn gap2_brute(n: u32, max: u32) -> u64 {
    if n == 0 {
        return 1;
    }
    (1..=max.min(n)).map(|p| gap2_brute(n - p, p.saturating_sub(2))).sum()
}

fn rogers_ramanujan() -> Check {
    let order = 40;
    let first = substitute_x(&theorem1_truncated(order), &rat(-1), 1);
    let product = lib(rr_product_truncated(order, &BTreeSet::from([1, 4]), 5))?;
    ensure(first == product, || "X=-q differs from the 1,4 mod 5 product".into())?;
    let brute: Vec<Rational> = (0..=order).map(|n| rat(gap2_brute(n, n) as i64)).collect();
    ensure(first.coeffs() == &brute[..], || "X=-q differs from brute-force gap-2 counts".into())?;
    let mut counted = vec![rat(1)];
    counted.extend(lib(sequence_rpartitions(2, order))?.into_iter().map(|v| Rational::from_integer(v.into())));
    ensure(lib(QSeries::from_coeffs(counted))? == first, || "sequence_rpartitions(2) differs".into())?;

    let side = specialization_report(order);
    println!("      k   X=-1  X=-q^2  prod(2,3 mod 5)");
    for k in 0..=8 {
        println!(
            "    {k:>3} {:>6} {:>7} {:>16}",
            side.x_minus_one.coeff(k),
            side.x_minus_q2.coeff(k),
            side.second_product.coeff(k)
        );
    }
    Ok(())
}

fn negative_controls() -> Check {
    // Perturbed table entry.
    let mut table = lib(generate_table(24))?;
    let bumped = &table.entry(12, 2) + &QPoly::q_pow(99);
    lib(table.set_entry(12, 2, bumped))?;
    match synthesize_from_table(Mode::Andrews, 5, &table) {
        Err(Error::NoGaussianFit { a: 2, n: 12 }) => {}
        other => return Err(format!("perturbed table, andrews: {other:?}")),
    }
    match synthesize_from_table(Mode::Ansatz, 5, &table) {
        Err(Error::AnsatzFailed { a: 2, .. }) => {}
        other => return Err(format!("perturbed table, ansatz: {other:?}")),
    }

    // Wrong operator S^2 - S.
    let one = qetude::exactalg::MultiPoly::constant(rat(1));
    let wrong = lib(Recurrence::new(one.clone(), -&one, qetude::exactalg::MultiPoly::zero()))?;
    match solve_certificate(&wrong, 4) {
        Err(Error::CertificateNotFound(4)) => {}
        other => return Err(format!("wrong operator: {:?}", other.map(|c| c.value.to_string()))),
    }
    let numeric = lib(check_operator_numeric(&wrong, 10, theorem2_value))?;
    ensure(!numeric.holds, || "wrong operator passed the numeric check".into())?;

    // Corrupted cache file.
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cache = DetCache::new(Some(dir.path().to_path_buf()));
    let good = lib(cache.det(30))?.value;
    let path = cache.path_for(30).expect("cache enabled");
    let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
    std::fs::write(&path, &text[..text.len() / 3]).map_err(|e| e.to_string())?;
    let again = lib(cache.det(30))?;
    ensure(again.source == Source::Computed && again.warnings.len() == 1 && again.value == good, || {
        format!("corrupt cache: source {:?}, warnings {:?}", again.source, again.warnings)
    })?;

    // Off-by-one q-Pochhammer in the reproduction run.
    let report = lib(reproduce(Some("gaussian"), Some(Fault::QPochhammerOffByOne)))?;
    ensure(report.first_mismatch().map(|m| m.item.as_str()) == Some("gaussian-1"), || {
        "injected fault did not fail gaussian-1".into()
    })
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 oracle equivalence, n <= 12", oracle_equivalence),
        ("2 closed form = recurrence, n <= 40", closed_form_matches),
        ("3 coefficient lists reproduced", tables_reproduced),
        ("4 Andrews-style conjectures", andrews_pipeline),
        ("5 ansatz conjectures and denominators", ansatz_pipeline),
        ("6 recurrence, coefficient identity, certificate", proof_mechanized),
        ("7 stabilization, n in [3,30]", stabilization),
        ("8 OEIS sequence tie-in", oeis_tie_in),
        ("9 Rogers-Ramanujan specializations", rogers_ramanujan),
        ("10 negative controls", negative_controls),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        match run() {
            Ok(()) => println!("PASS  {name}  ({:.2}s)", t.elapsed().as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("{} of 10 criteria passed in {:.2}s", 10 - failed, start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
