use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Cell, Outcome, RunConfig, Sink};
use crate::borwein::{borwein_poly, decompose_mod_p, is_prime, shift_data, BorweinParams};
use crate::charsieve::{
    binom_product_coeff, binom_series_coeff, characters, lemma_d_product, li_wan_check,
    n_d_alternating_all_brute, n_d_alternating_all_fold, periodic_t, power_sum_t, s_m_chi_brute,
    s_m_chi_closed, z_m, PrecisionPolicy, SieveInstance, MAX_SUBSET_BITS,
};
use crate::error::{Error, Result};
use crate::progsum::{
    gp_bound, gp_records, li_bound, li_records, max_deviation, progression_sums,
    progression_sums_dense, progression_sums_via_characters, render_decimal, render_rational,
    theorem_main_records, zaharescu_bound, zaharescu_records, ProgressionRecord,
};

fn check_degree(params: &BorweinParams, cap: u64) -> Result<()> {
    if params.degree() > cap {
        return Err(Error::DegreeCap {
            degree: params.degree(),
            cap,
        });
    }
    Ok(())
}

fn policy(params: &BorweinParams, bits: Option<u32>) -> Result<PrecisionPolicy> {
    let base = PrecisionPolicy::for_params(params);
    match bits {
        Some(b) => base.with_bits(b),
        None => Ok(base),
    }
}

fn params_cells(params: &BorweinParams) -> [Cell; 3] {
    [params.p().into(), params.s().into(), params.n().into()]
}

fn residues(d: u64, b: Option<i64>) -> Vec<usize> {
    match b {
        Some(b) => vec![b.rem_euclid(d as i64) as usize],
        None => (0..d as usize).collect(),
    }
}

pub(super) fn expand(config: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    let params = config.grid[0];
    check_degree(&params, config.max_degree)?;
    let poly = borwein_poly(&params);
    let mut sink = Sink::new(config.format, out, &["i", "a_i"])?;
    for (i, c) in poly.coeffs().iter().enumerate() {
        if c.sign() != num_bigint::Sign::NoSign {
            sink.row(&[i.into(), c.into()])?;
        }
    }
    let rows = sink.rows();
    sink.finish()?;
    Ok(Outcome { rows, failures: 0 })
}

pub(super) fn decompose(config: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    let params = config.grid[0];
    check_degree(&params, config.max_degree)?;
    let parts = decompose_mod_p(&borwein_poly(&params), params.p());
    let mut sink = Sink::new(config.format, out, &["class", "j", "coeff"])?;
    for (t, part) in parts.iter().enumerate() {
        for (j, c) in part.coeffs().iter().enumerate() {
            if c.sign() != num_bigint::Sign::NoSign {
                sink.row(&[t.into(), j.into(), c.into()])?;
            }
        }
    }
    let rows = sink.rows();
    sink.finish()?;
    Ok(Outcome { rows, failures: 0 })
}

pub(super) fn sum(config: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    let tables: Vec<(BorweinParams, u64, Vec<BigInt>)> = config
        .grid
        .par_iter()
        .map(|params| {
            let d = config.d.unwrap_or(params.group_order());
            Ok((*params, d, progression_sums(params, d)?))
        })
        .collect::<Result<_>>()?;
    let mut sink = Sink::new(config.format, out, &["p", "s", "n", "d", "b", "S"])?;
    for (params, d, sums) in &tables {
        for b in residues(*d, config.b) {
            let [p, s, n] = params_cells(params);
            sink.row(&[p, s, n, (*d).into(), b.into(), (&sums[b]).into()])?;
        }
    }
    let rows = sink.rows();
    sink.finish()?;
    Ok(Outcome { rows, failures: 0 })
}

const VERIFY_HEADER: [&str; 12] = [
    "p",
    "s",
    "n",
    "b",
    "S",
    "main_num",
    "main_den",
    "within_bound",
    "dense",
    "nd_fold",
    "nd_char",
    "nd_brute",
];

#[derive(Clone, Copy, PartialEq, Eq)]
enum Check {
    Ok,
    Fail,
    Skip,
}

impl Check {
    fn of(agree: bool) -> Self {
        if agree {
            Check::Ok
        } else {
            Check::Fail
        }
    }

    fn cell(self) -> Cell {
        match self {
            Check::Ok => "ok".into(),
            Check::Fail => "fail".into(),
            Check::Skip => "skip".into(),
        }
    }
}

/// Cross-check columns for one grid point: one entry per residue.
fn cross_checks(
    params: &BorweinParams,
    d: u64,
    sums: &[BigInt],
    config: &RunConfig,
) -> Result<Vec<[Check; 4]>> {
    let len = sums.len();
    let dense = if params.degree() <= config.max_degree {
        let other = progression_sums_dense(params, d)?;
        (0..len).map(|b| Check::of(other[b] == sums[b])).collect()
    } else {
        vec![Check::Skip; len]
    };
    if d != params.group_order() {
        return Ok(dense.into_iter().map(|c| [c, Check::Skip, Check::Skip, Check::Skip]).collect());
    }
    let shift = shift_data(params);
    let e = shift.e % d;
    let via_nd = |nd: &[BigInt], b: usize| -> BigInt {
        &nd[((b as u64 + d - e) % d) as usize] * shift.sign
    };
    let fold = n_d_alternating_all_fold(params);
    let chars = match progression_sums_via_characters(params, &policy(params, config.bits)?) {
        Ok(v) => Some(v),
        Err(Error::PrecisionExhausted { .. }) => None,
        Err(e) => return Err(e),
    };
    let s_d = params.s() as usize * params.n() as usize * (params.p() as usize - 1);
    let brute = if s_d <= MAX_SUBSET_BITS {
        Some(n_d_alternating_all_brute(params)?)
    } else {
        None
    };
    Ok((0..len)
        .map(|b| {
            [
                dense[b],
                Check::of(via_nd(&fold, b) == sums[b]),
                chars.as_ref().map_or(Check::Fail, |c| Check::of(c[b] == sums[b])),
                brute
                    .as_ref()
                    .map_or(Check::Skip, |nd| Check::of(via_nd(nd, b) == sums[b])),
            ]
        })
        .collect())
}

pub(super) fn verify(config: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    let cells: Vec<(Vec<ProgressionRecord>, Vec<[Check; 4]>)> = config
        .grid
        .par_iter()
        .map(|params| {
            let records = match config.d {
                None => theorem_main_records(params)?,
                Some(d) if d == params.group_order() => theorem_main_records(params)?,
                Some(d) if d == params.p() * params.n() => gp_records(params)?,
                Some(d) => {
                    return Err(Error::InvalidArgument(format!(
                        "verify accepts d = pn or 2pn, got {d} for {params}"
                    )))
                }
            };
            let d = records[0].d;
            let sums: Vec<BigInt> = records.iter().map(|r| r.sum.clone()).collect();
            let checks = cross_checks(params, d, &sums, config)?;
            Ok((records, checks))
        })
        .collect::<Result<_>>()?;

    let mut sink = Sink::new(config.format, out, &VERIFY_HEADER)?;
    let mut failures = 0;
    for (records, checks) in &cells {
        for b in residues(records[0].d, config.b) {
            let r = &records[b];
            let [p, s, n] = params_cells(&r.params);
            let mut row = vec![
                p,
                s,
                n,
                r.b.into(),
                (&r.sum).into(),
                r.main_term.numer().into(),
                r.main_term.denom().into(),
                r.within_bound.into(),
            ];
            row.extend(checks[b].iter().map(|c| c.cell()));
            if !r.within_bound || checks[b].contains(&Check::Fail) {
                failures += 1;
                eprintln!("check failed: {} d={} b={} S={}", r.params, r.d, r.b, r.sum);
            }
            sink.row(&row)?;
        }
    }
    let rows = sink.rows();
    sink.finish()?;
    Ok(Outcome { rows, failures })
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn random_instance(rng: &mut ChaCha8Rng) -> SieveInstance {
    let domain = rng.gen_range(1..=6usize);
    let m = rng.gen_range(1..=5usize);
    let density = rng.gen_range(1..=4u32);
    let mut inst = SieveInstance::new(domain, m);
    let total = domain.pow(m as u32);
    for code in 0..total {
        if rng.gen_range(0..4u32) >= density {
            continue;
        }
        let mut x = Vec::with_capacity(m);
        let mut c = code;
        for _ in 0..m {
            x.push(c % domain);
            c /= domain;
        }
        let num = rng.gen_range(-9..=9i64);
        let den = rng.gen_range(1..=9i64);
        inst.insert(x, ratio(num, den));
    }
    inst
}

const SIEVE_TOL: f64 = 1e-10;

struct SieveRow {
    suite: &'static str,
    case: String,
    lhs: String,
    rhs: String,
    residual: String,
    agree: bool,
}

fn exact_row(suite: &'static str, case: String, lhs: &BigRational, rhs: &BigRational) -> SieveRow {
    SieveRow {
        suite,
        case,
        lhs: render_rational(lhs),
        rhs: render_rational(rhs),
        residual: render_rational(&(lhs - rhs).abs()),
        agree: lhs == rhs,
    }
}

fn odd_primes_up_to(limit: u64) -> Vec<u64> {
    (3..=limit).filter(|&p| is_prime(p)).collect()
}

fn sieve_rows(config: &RunConfig) -> Result<Vec<SieveRow>> {
    let mut rows = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for trial in 0..config.trials {
        let inst = random_instance(&mut rng);
        let (lhs, rhs) = li_wan_check(&inst)?;
        let case = format!(
            "trial={trial} A={} m={} points={}",
            inst.domain_size,
            inst.m,
            inst.points.len()
        );
        rows.push(exact_row("li_wan", case, &lhs, &rhs));
    }

    for ell in 1..=4u64 {
        for a in -8..=8i64 {
            for m in 0..=12usize {
                let lhs = z_m(&periodic_t(ell, a, m));
                let rhs = binom_series_coeff(ell, a, m as u64);
                rows.push(exact_row("z_periodic", format!("ell={ell} a={a} m={m}"), &lhs, &rhs));
            }
        }
    }

    let points = [ratio(1, 1), ratio(-1, 1), ratio(1, 2)];
    for ell in 1..=2u64 {
        for a in [1i64, -2, 3] {
            for m in 0..=10usize {
                let lhs = z_m(&power_sum_t(&points, ell, a, m));
                let rhs = binom_product_coeff(&points, ell, a, m as u64);
                rows.push(exact_row("z_product", format!("ell={ell} a={a} m={m}"), &lhs, &rhs));
            }
        }
    }

    for p in [3u64, 5] {
        for n in 1..=2u64 {
            let params = BorweinParams::new(p, 1, n)?;
            let pol = policy(&params, config.bits)?;
            for chi in characters(params.group_order()) {
                for m in 0..=3u64 {
                    let closed = s_m_chi_closed(&params, &chi, m, &pol)?;
                    let brute = s_m_chi_brute(&params, &chi, m as usize, &pol)?;
                    let residual = closed.distance_up(&brute);
                    rows.push(SieveRow {
                        suite: "char_sum",
                        case: format!("p={p} n={n} t={} m={m}", chi.index()),
                        lhs: closed.to_string(),
                        rhs: brute.to_string(),
                        residual: format!("{residual:.3e}"),
                        agree: residual < SIEVE_TOL,
                    });
                }
            }
        }
    }

    let bits = config.bits.unwrap_or(128);
    for p in odd_primes_up_to(23) {
        for r in 1..p {
            let l = lemma_d_product(p, r, bits)?;
            let residual = l.diff_up.max(l.modulus_dev_up);
            rows.push(SieveRow {
                suite: "root_product",
                case: format!("p={p} r={r}"),
                lhs: l.lhs.to_string(),
                rhs: l.rhs.to_string(),
                residual: format!("{residual:.3e}"),
                agree: residual < SIEVE_TOL,
            });
        }
    }
    Ok(rows)
}

pub(super) fn sieve_test(config: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    let rows = sieve_rows(config)?;
    let mut sink = Sink::new(
        config.format,
        out,
        &["suite", "case", "lhs", "rhs", "residual", "agree"],
    )?;
    let mut failures = 0;
    for r in rows {
        if !r.agree {
            failures += 1;
            eprintln!("disagreement: {} {}", r.suite, r.case);
        }
        sink.row(&[
            r.suite.into(),
            r.case.into(),
            r.lhs.into(),
            r.rhs.into(),
            r.residual.into(),
            r.agree.into(),
        ])?;
    }
    let rows = sink.rows();
    sink.finish()?;
    Ok(Outcome { rows, failures })
}

/// Decimal rendering with about 38 significant digits (128 bits). The Zaharescu bound is
/// always at least 1, so the integer part fixes the number of places.
fn render_significant(r: &BigRational) -> String {
    let int_digits = r.abs().to_integer().to_string().len();
    render_decimal(r, 38usize.saturating_sub(int_digits))
}

const SWEEP_HEADER: [&str; 16] = [
    "p",
    "s",
    "n",
    "q",
    "max_dev_main",
    "main_bound",
    "main_ok",
    "max_dev_gp",
    "gp_ok",
    "max_dev_li",
    "li_bound",
    "li_ok",
    "zaharescu_bound",
    "zaharescu_decimal",
    "max_dev_zaharescu",
    "zaharescu_ok",
];

fn all_within(records: &[ProgressionRecord]) -> bool {
    records.iter().all(|r| r.within_bound)
}

fn ok_cell(ok: bool) -> Cell {
    if ok {
        "ok".into()
    } else {
        "fail".into()
    }
}

fn sweep_row(params: &BorweinParams, q: Option<u64>) -> Result<(Vec<Cell>, bool)> {
    let main = theorem_main_records(params)?;
    let gp = gp_records(params)?;
    let main_ok = all_within(&main);
    let gp_ok = all_within(&gp);
    let mut pass = main_ok && gp_ok;
    let [p, s, n] = params_cells(params);
    let mut row = vec![
        p,
        s,
        n,
        q.map_or(Cell::Text(String::new()), Cell::from),
        render_rational(&max_deviation(&main)).into(),
        gp_bound(params).to_string().into(),
        ok_cell(main_ok),
        render_rational(&max_deviation(&gp)).into(),
        ok_cell(gp_ok),
    ];
    if params.p() == 3 && params.s() == 1 {
        let li = li_records(params)?;
        let ok = all_within(&li);
        pass &= ok;
        row.extend([
            render_rational(&max_deviation(&li)).into(),
            li_bound(params.n()).into(),
            ok_cell(ok),
        ]);
    } else {
        row.extend([Cell::Text(String::new()), Cell::Text(String::new()), "skip".into()]);
    }
    match q.filter(|&q| is_prime(q) && q != params.p() && q <= params.n()) {
        Some(q) => {
            let bound = zaharescu_bound(params.p(), q, params.s(), params.n())?;
            let recs = zaharescu_records(params, q)?;
            let ok = all_within(&recs);
            pass &= ok;
            row.extend([
                render_rational(&bound).into(),
                render_significant(&bound).into(),
                render_rational(&max_deviation(&recs)).into(),
                ok_cell(ok),
            ]);
        }
        None => row.extend([
            Cell::Text(String::new()),
            Cell::Text(String::new()),
            Cell::Text(String::new()),
            "skip".into(),
        ]),
    }
    Ok((row, pass))
}

pub(super) fn sweep(config: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    if let Some(q) = config.q {
        if !is_prime(q) {
            return Err(Error::InvalidArgument(format!("q = {q} is not prime")));
        }
    }
    let rows: Vec<(Vec<Cell>, bool)> = config
        .grid
        .par_iter()
        .map(|params| sweep_row(params, config.q))
        .collect::<Result<_>>()?;
    let mut sink = Sink::new(config.format, out, &SWEEP_HEADER)?;
    let mut failures = 0;
    for (row, pass) in &rows {
        if !pass {
            failures += 1;
        }
        sink.row(row)?;
    }
    let rows = sink.rows();
    sink.finish()?;
    Ok(Outcome { rows, failures })
}

#[cfg(test)]
mod tests {
    use super::super::{Command, Format, RunConfig};
    use super::*;

    fn config(command: Command, grid: &[(u64, u64, u64)]) -> RunConfig {
        RunConfig {
            command,
            grid: grid.iter().map(|&(p, s, n)| BorweinParams::new(p, s, n).unwrap()).collect(),
            d: None,
            b: None,
            q: None,
            format: Format::Csv,
            out: None,
            bits: None,
            seed: 0,
            trials: 100,
            max_degree: 1_000_000,
        }
    }

    fn run_text(c: &RunConfig) -> (String, Outcome) {
        let mut buf = Vec::new();
        let o = super::super::run(c, &mut buf).unwrap();
        (String::from_utf8(buf).unwrap(), o)
    }

    #[test]
    fn expand_lists_nonzero_coefficients() {
        let (text, o) = run_text(&config(Command::Expand, &[(3, 1, 1)]));
        assert_eq!(text, "i,a_i\n0,1\n1,-1\n2,-1\n3,1\n");
        assert_eq!(o, Outcome { rows: 4, failures: 0 });
    }

    #[test]
    fn expand_respects_degree_cap() {
        let mut c = config(Command::Expand, &[(3, 1, 10)]);
        c.max_degree = 100;
        assert!(matches!(
            super::super::run(&c, &mut Vec::new()),
            Err(Error::DegreeCap { degree: 300, cap: 100 })
        ));
    }

    #[test]
    fn decompose_small() {
        let (text, _) = run_text(&config(Command::Decompose, &[(3, 1, 1)]));
        assert_eq!(text, "class,j,coeff\n0,0,1\n0,1,1\n1,0,1\n2,0,1\n");
    }

    #[test]
    fn sum_single_residue() {
        let mut c = config(Command::Sum, &[(3, 1, 1)]);
        c.d = Some(3);
        c.b = Some(-3);
        assert_eq!(run_text(&c).0, "p,s,n,d,b,S\n3,1,1,3,0,2\n");
    }

    #[test]
    fn verify_small_grid_passes() {
        let grid: Vec<_> = [3u64, 5]
            .iter()
            .flat_map(|&p| [1u64, 2].into_iter().flat_map(move |s| (1..=4).map(move |n| (p, s, n))))
            .collect();
        let (text, o) = run_text(&config(Command::Verify, &grid));
        assert_eq!(o.failures, 0);
        assert!(text.starts_with("p,s,n,b,S,main_num,main_den,within_bound,dense,nd_fold,nd_char,nd_brute\n"));
        assert!(text.contains("3,1,1,0,1,1,1,true,ok,ok,ok,ok\n"));
        assert!(!text.contains("fail"));
    }

    #[test]
    fn verify_empty_grid() {
        let (text, o) = run_text(&config(Command::Verify, &[]));
        assert_eq!(o, Outcome { rows: 0, failures: 0 });
        assert_eq!(text.lines().count(), 1);
    }

    #[test]
    fn sweep_rows_and_bounds() {
        let grid: Vec<_> = (1..=6).map(|n| (3, 1, n)).collect();
        let mut c = config(Command::Sweep, &grid);
        c.q = Some(2);
        let (text, o) = run_text(&c);
        assert_eq!(o.failures, 0);
        assert_eq!(text.lines().count(), 7);
        assert!(text.lines().nth(1).unwrap().starts_with("3,1,1,2,"));
    }

    #[test]
    fn significant_digits() {
        assert_eq!(render_significant(&ratio(4, 3)), format!("1.{}", "3".repeat(37)));
        assert_eq!(render_significant(&ratio(3, 1)), format!("3.{}", "0".repeat(37)));
    }
}
