//! Acceptance run: every criterion is evaluated (in parallel), then one
//! PASS/FAIL line is printed per criterion in order. Exits nonzero if any
//! criterion fails.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use pvk_cli::commands::{cmd_table, Options};
use pvk_cli::golden;
use pvk_cli::report::Status;
use pvk_cli::suites::{self, DEFAULT_SEED};
use pvk_core::combinatorics::{asymptotic_ratio, rank_by_genfun, rank_by_partitions};
use pvk_core::exterior::{anzai_matrix, dn_power};
use pvk_core::groups::{
    abelianization, embed_gamma, embed_gamma_exponents, gamma_matrix, GroupPresentation,
    SemidirectElement,
};
use pvk_core::ktheory::{kgroups_of_anzai, pv_kgroups, rank_kgroups};
use pvk_core::FGAbelianGroup;

struct Outcome {
    ok: bool,
    detail: String,
}

fn report(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn criterion_01_table_reproduction() -> Outcome {
    let doc = cmd_table(11, Options::default()).unwrap();
    let mut mismatches = Vec::new();
    for (row, g) in doc.results["rows"]
        .as_array()
        .unwrap()
        .iter()
        .zip(golden::TABLE.iter())
    {
        let k = kgroups_of_anzai(g.n).unwrap();
        if (k.k0.clone(), k.k1.clone()) != g.groups() || row["golden"] != true {
            mismatches.push(g.n);
        }
    }
    let ok = mismatches.is_empty() && doc.status == Status::Ok;
    report(
        ok,
        format!("n = 1..11 against the published table, mismatches {mismatches:?}"),
    )
}

fn criterion_02_first_torsion_block() -> Outcome {
    let k = kgroups_of_anzai(6).unwrap();
    let want: FGAbelianGroup = golden::FIRST_TORSION_BLOCK.parse().unwrap();
    let block = &k.blocks[3].coker;
    let ok = *block == want && k.k1.torsion() == [BigInt::from(2)] && k.k0.is_free();
    report(
        ok,
        format!("coker(wedge^3 S_6 - I) = {block}, K1 = {}", k.k1),
    )
}

fn criterion_03_small_example() -> Outcome {
    let k = kgroups_of_anzai(3).unwrap();
    let z = FGAbelianGroup::free(1);
    let blocks_ok = k.blocks.len() == 4 && k.blocks.iter().all(|b| b.coker == z && b.ker == z);
    let ok = blocks_ok && k.k0 == FGAbelianGroup::free(4) && k.k1 == FGAbelianGroup::free(4);
    report(
        ok,
        format!("all eight blocks Z, K0 = {}, K1 = {}", k.k0, k.k1),
    )
}

fn criterion_04_three_way_rank() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=12 {
        let snf = BigInt::from(rank_kgroups(&anzai_matrix(n)).unwrap());
        let part = rank_by_partitions(n);
        let gf = rank_by_genfun(n);
        let golden_ok = golden::row(n).is_none_or(|g| snf == BigInt::from(g.rank));
        if snf != part || part != gf || !golden_ok {
            bad.push(n);
        }
    }
    report(
        bad.is_empty(),
        format!("snf, partitions and genfun agree for n = 1..12, bad {bad:?}"),
    )
}

fn criterion_05_unipotent_rank() -> Outcome {
    let s = suites::unipotent_rank(DEFAULT_SEED, 200, 8);
    report(
        s.passed() && s.cases == 200,
        format!("{} cases, {} failures", s.cases, s.failures),
    )
}

fn criterion_06_duality() -> Outcome {
    let s = suites::duality(DEFAULT_SEED, 100);
    report(
        s.passed() && s.cases == 100,
        format!("{} cases, {} failures", s.cases, s.failures),
    )
}

fn criterion_07_odd_symmetry() -> Outcome {
    let anzai_bad: Vec<usize> = (1..=11)
        .step_by(2)
        .filter(|&n| {
            let k = pv_kgroups(&anzai_matrix(n)).unwrap();
            k.k0 != k.k1
        })
        .collect();
    let s = suites::odd_symmetry(DEFAULT_SEED, 50);
    let ok = anzai_bad.is_empty() && s.passed() && s.cases == 50;
    report(
        ok,
        format!(
            "odd Anzai n <= 11 bad {anzai_bad:?}; {} random cases, {} failures",
            s.cases, s.failures
        ),
    )
}

fn criterion_08_identities() -> Outcome {
    let a = suites::binomial_identity();
    let b = suites::delta_identity();
    report(
        a.passed() && b.passed(),
        format!(
            "binomial {} cases {} failures; delta {} cases {} failures",
            a.cases, a.failures, b.cases, b.failures
        ),
    )
}

fn criterion_09_oracle() -> Outcome {
    let s = suites::oracle(DEFAULT_SEED, 1000);
    report(
        s.passed() && s.cases == 1000,
        format!("{} cases, {} failures", s.cases, s.failures),
    )
}

fn furstenberg_exponents() -> BTreeMap<(usize, usize), BigInt> {
    [
        ((1, 2), 2),
        ((1, 3), 3),
        ((2, 3), 5),
        ((1, 4), 7),
        ((2, 4), 11),
        ((3, 4), 13),
    ]
    .into_iter()
    .map(|(k, v)| (k, BigInt::from(v)))
    .collect()
}

fn criterion_10_group_layer() -> Outcome {
    let mut problems = Vec::new();
    for n in 1..=8 {
        let d = GroupPresentation::dn(n);
        let x = SemidirectElement::x(&d);
        let y = |j| SemidirectElement::y(&d, j).unwrap();
        if !x.commutator(&y(0)).unwrap().is_identity() {
            problems.push(format!("[x,y0] != 1 for n={n}"));
        }
        for j in 1..=n {
            if x.commutator(&y(j)).unwrap() != y(j - 1) {
                problems.push(format!("[x,y{j}] != y{} for n={n}", j - 1));
            }
            for i in 0..j {
                if !y(i).commutator(&y(j)).unwrap().is_identity() {
                    problems.push(format!("[y{i},y{j}] != 1 for n={n}"));
                }
            }
        }
        if abelianization(&d) != FGAbelianGroup::free(2) {
            problems.push(format!("abelianization of D_{n} is {}", abelianization(&d)));
        }
    }

    let b = furstenberg_exponents();
    let c = embed_gamma_exponents(4, &b).unwrap();
    let col = |k: usize| -> Vec<BigInt> { (0..5).map(|i| c[(i, k)].clone()).collect() };
    let ints = |v: &[i64]| -> Vec<BigInt> { v.iter().map(|&x| BigInt::from(x)).collect() };
    // ι(y'₂) = y₂^{b₁₂}, ι(y'₃) = y₂^{b₁₃} y₃^{b₁₂b₂₃}
    if col(2) != ints(&[0, 0, 2, 0, 0]) {
        problems.push(format!("iota(y'2) exponents {:?}", col(2)));
    }
    if col(3) != ints(&[0, 0, 3, 10, 0]) {
        problems.push(format!("iota(y'3) exponents {:?}", col(3)));
    }
    let gamma = GroupPresentation::gamma(4, &b).unwrap();
    let dn = GroupPresentation::dn(4);
    if dn_power(4, 1).checked_mul(&c).unwrap()
        != c.checked_mul(&gamma_matrix(4, &b).unwrap()).unwrap()
    {
        problems.push("embedding does not intertwine the actions".into());
    }
    let mut gens = vec![SemidirectElement::x(&gamma)];
    gens.extend((0..=4).map(|j| SemidirectElement::y(&gamma, j).unwrap()));
    for g in &gens {
        for h in &gens {
            let lhs = embed_gamma(&g.multiply(h).unwrap(), &c, &dn).unwrap();
            let rhs = embed_gamma(g, &c, &dn)
                .unwrap()
                .multiply(&embed_gamma(h, &c, &dn).unwrap())
                .unwrap();
            if lhs != rhs {
                problems.push("embedding is not multiplicative on generators".into());
            }
        }
    }
    report(
        problems.is_empty(),
        format!("relations for n <= 8, abelianization, embedding; problems {problems:?}"),
    )
}

/// Ratios are compared as 6-decimal truncations, i.e. at 10⁻⁶.
fn ratio_micro(n: usize) -> i64 {
    let s = asymptotic_ratio(n, 6);
    s.replace('.', "").parse().unwrap()
}

fn criterion_11_asymptotic_trend() -> Outcome {
    // √(24/π) = 2.7639532…
    const LIMIT: i64 = 2_763_953;
    let ratios: Vec<(usize, i64)> = (12..=40).map(|n| (n, ratio_micro(n))).collect();
    let drops: Vec<String> = ratios
        .windows(2)
        .filter(|w| w[1].1 <= w[0].1)
        .map(|w| {
            format!(
                "n={}: {} -> {}",
                w[1].0,
                asymptotic_ratio(w[0].0, 6),
                asymptotic_ratio(w[1].0, 6)
            )
        })
        .collect();
    let above: Vec<usize> = ratios
        .iter()
        .filter(|r| r.1 >= LIMIT)
        .map(|r| r.0)
        .collect();
    let last = ratios.last().unwrap().1;
    let ok = drops.is_empty() && above.is_empty() && last > 2_708_000;
    report(
        ok,
        format!(
            "ratio at n=40 is {}; at or above sqrt(24/pi) for {above:?}; not increasing at {drops:?}",
            asymptotic_ratio(40, 6)
        ),
    )
}

fn criterion_12_monotonicity() -> Outcome {
    let a: Vec<BigInt> = (1..=41).map(rank_by_genfun).collect();
    let bad: Vec<usize> = (0..40)
        .filter(|&i| a[i + 1] <= a[i])
        .map(|i| i + 1)
        .collect();
    report(
        bad.is_empty(),
        format!("a_(n+1) > a_n for n = 1..40, violations {bad:?}"),
    )
}

fn main() {
    let criteria: [fn() -> Outcome; 12] = [
        criterion_01_table_reproduction,
        criterion_02_first_torsion_block,
        criterion_03_small_example,
        criterion_04_three_way_rank,
        criterion_05_unipotent_rank,
        criterion_06_duality,
        criterion_07_odd_symmetry,
        criterion_08_identities,
        criterion_09_oracle,
        criterion_10_group_layer,
        criterion_11_asymptotic_trend,
        criterion_12_monotonicity,
    ];
    let handles: Vec<_> = criteria.into_iter().map(std::thread::spawn).collect();
    let mut failed = 0;
    for (i, h) in handles.into_iter().enumerate() {
        let outcome = h.join().unwrap_or_else(|e| Outcome {
            ok: false,
            detail: format!(
                "panicked: {}",
                e.downcast_ref::<String>()
                    .map(String::as_str)
                    .or_else(|| e.downcast_ref::<&str>().copied())
                    .unwrap_or("unknown panic")
            ),
        });
        let verdict = if outcome.ok { "PASS" } else { "FAIL" };
        println!("criterion {}: {verdict} - {}", i + 1, outcome.detail);
        failed += usize::from(!outcome.ok);
    }
    println!("acceptance: {} of 12 criteria pass", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
