//! Acceptance suite: one line per criterion, nonzero exit on any failure.
//!
//! Expected values come from oracles written here, not from the library.

use std::panic;
use std::process::ExitCode;

use cremona::constructions::{
    apply, audit_self_intersection, degree_after, Verdict,
};
use cremona::curves::{seed_generic_lines, seed_pencil, seed_smooth};
use cremona::extensions::{split_test, Property, SplitKind, Tri};
use cremona::fpgroup::{cyclic_quotient_order, smith_normal_form, AbelianInvariants, IntMatrix, Word};
use cremona::meridians::{run_schedule, FiberLabel};
use cremona::zariski::{enumerate_family, ZariskiPairRecord};
use cremona::{ConstructionSpec, CurveDatum, GroupDescriptor, SingularityMultiset, SingularityType};
use num_bigint::{BigInt, BigUint};
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// Tuples with `1 <= len <= max_len` and entries in `1..=max_entry`.
fn tuples(max_len: usize, max_entry: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<u64>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for t in &layer {
            for x in 1..=max_entry {
                let mut u = t.clone();
                u.push(x);
                next.push(u);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// General tuples with k <= 3 and n_i <= 4, plus the matching uludag(n).
fn spec_grid() -> Vec<ConstructionSpec> {
    let mut out: Vec<ConstructionSpec> = (1..=4).map(ConstructionSpec::Uludag).collect();
    out.extend(tuples(3, 4).into_iter().map(ConstructionSpec::General));
    out
}

/// Mixed specs whose n and m tuples come from the grid and balance.
fn mixed_grid() -> Vec<ConstructionSpec> {
    let ts = tuples(3, 4);
    let mut out = Vec::new();
    for n in &ts {
        for m in &ts {
            if n.iter().sum::<u64>() == m.iter().sum::<u64>() && m.len() <= 2 {
                out.push(ConstructionSpec::Mixed {
                    n: n.clone(),
                    m: m.clone(),
                });
            }
        }
    }
    out
}

fn sum(ns: &[u64]) -> u64 {
    ns.iter().sum()
}

fn counts(spec: &ConstructionSpec) -> Vec<u64> {
    match spec {
        ConstructionSpec::Uludag(n) | ConstructionSpec::Special(n) => vec![*n],
        ConstructionSpec::General(ns) => ns.clone(),
        ConstructionSpec::Mixed { n, .. } => n.clone(),
    }
}

fn criterion_1() -> Outcome {
    for d in 1..=5u64 {
        for spec in spec_grid() {
            let expected = d * (sum(&counts(&spec)) + 1);
            let got = degree_after(&big(d), &spec);
            ensure(got == big(expected), || format!("d={d} {spec}: {got} != {expected}"))?;
        }
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    for d in 1..=5u64 {
        for spec in spec_grid().into_iter().chain(mixed_grid()) {
            let r = audit_self_intersection(&big(d), &spec).map_err(|e| e.to_string())?;
            ensure(
                *r.residual() == BigInt::from(0) && r.verdict() == Verdict::Pass,
                || format!("d={d} {spec}: residual {}", r.residual()),
            )?;
        }
    }
    for n in 1..=4u64 {
        for d in 1..=3u64 {
            let r = audit_self_intersection(&big(d), &ConstructionSpec::Special(n)).map_err(|e| e.to_string())?;
            let expected = -3 * (n * n * d * d) as i64;
            ensure(*r.residual() == BigInt::from(expected), || {
                format!("special({n}) d={d}: residual {} != {expected}", r.residual())
            })?;
            ensure(r.verdict() == Verdict::Discrepancy, || "special verdict".into())?;
            let v = r.variant.as_ref().ok_or("missing variant evaluation")?;
            ensure(v.residual == BigInt::from(0), || {
                format!("special({n}) d={d}: variant residual {}", v.residual)
            })?;
        }
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    for ns in tuples(4, 5) {
        let got = cyclic_quotient_order(&ns).map_err(|e| e.to_string())?;
        let expected = sum(&ns) + 1;
        ensure(got == big(expected), || format!("{ns:?}: {got} != {expected}"))?;
    }
    Ok(())
}

fn closed_form(ns: &[u64], i: usize) -> Word {
    let e: Vec<String> = std::iter::once("beta".to_string())
        .chain((1..=ns.len()).map(|j| format!("alpha{j}")))
        .collect();
    let mut text = String::new();
    for _ in 0..ns[i] {
        text.push_str(&e.join(" "));
        text.push(' ');
    }
    text.push_str(&format!("alpha{}", i + 1));
    text.parse().expect("closed form parses")
}

fn criterion_4() -> Outcome {
    for ns in tuples(4, 4) {
        let spec = ConstructionSpec::General(ns.clone());
        let run = run_schedule(&spec).map_err(|e| e.to_string())?;
        ensure(run.max_index == sum(&ns) + 1, || format!("{spec}: max index {}", run.max_index))?;
        ensure(run.state.hirzebruch_index() == 1, || format!("{spec}: final index"))?;
        let p = run.state.meridian(FiberLabel::P).ok_or("missing P")?;
        ensure(p.to_string() == "beta", || format!("{spec}: P = {p}"))?;
        for i in 0..ns.len() {
            let got = run.state.meridian(FiberLabel::Q(i + 1)).ok_or("missing Q")?;
            let want = closed_form(&ns, i);
            ensure(got.letters() == want.letters(), || format!("{spec}: Q{} = {got}, want {want}", i + 1))?;
        }
    }
    for n in 1..=6u64 {
        let run = run_schedule(&ConstructionSpec::Special(n)).map_err(|e| e.to_string())?;
        let l = run.state.meridian(FiberLabel::L).ok_or("missing L")?;
        let want = vec!["alpha"; n as usize + 1].join(" ");
        ensure(l.to_string() == format!("alpha^{}", n + 1) && *l == want.parse::<Word>().unwrap(), || {
            format!("special({n}): L = {l}")
        })?;
        ensure(run.max_index == n + 1, || format!("special({n}): max index {}", run.max_index))?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    for d in 1..=5u64 {
        let seed = seed_smooth(d).map_err(|e| e.to_string())?;
        for spec in spec_grid() {
            let n = sum(&counts(&spec)) + 1;
            let c = apply(&seed, &spec).map_err(|e| e.to_string())?;
            let want: GroupDescriptor = format!("Z/{}", d * n).parse().unwrap();
            ensure(*c.group() == want, || format!("d={d} {spec}: {} != {want}", c.group()))?;
            ensure(c.props().get(Property::Cyclic) == Tri::True, || format!("d={d} {spec}: not cyclic"))?;
        }
    }
    let c = apply(&seed_smooth(2).unwrap(), &ConstructionSpec::Uludag(1)).map_err(|e| e.to_string())?;
    let want: SingularityMultiset = ["[2]", "[2,2]"].iter().map(|s| s.parse().unwrap()).collect();
    ensure(c.degree() == big(4), || format!("conic degree {}", c.degree()))?;
    ensure(*c.singularities() == want, || format!("conic singularities {}", c.singularities()))
}

fn run_text(m: u64, len: u64) -> String {
    vec![m.to_string(); len as usize].join(",")
}

/// Added singularities for a construction on a curve of degree `m`, from
/// the tacnode and blow-down formulas.
fn expected_added(m: u64, ns: &[u64]) -> Vec<SingularityType> {
    let s = sum(ns);
    let mut out: Vec<SingularityType> = ns.iter().map(|&n| format!("[{}]", run_text(m, n)).parse().unwrap()).collect();
    out.push(format!("[{},{}]", m * s, run_text(m, s)).parse().unwrap());
    out
}

fn criterion_6() -> Outcome {
    for m in 2..=5u64 {
        let pencil = seed_pencil(m).map_err(|e| e.to_string())?;
        let lines = seed_generic_lines(m).map_err(|e| e.to_string())?;
        for spec in spec_grid() {
            let ns = counts(&spec);
            let n = sum(&ns) + 1;

            let c = apply(&pencil, &spec).map_err(|e| e.to_string())?;
            let free = if m == 2 { "Z".to_string() } else { format!("F{}", m - 1) };
            let want: GroupDescriptor = format!("{free} (+) Z/{n}").parse().unwrap();
            ensure(*c.group() == want, || format!("pencil m={m} {spec}: {} != {want}", c.group()))?;
            let mut sings: Vec<SingularityType> = vec![format!("[{m}]").parse().unwrap()];
            sings.extend(expected_added(m, &ns));
            let sings: SingularityMultiset = sings.into_iter().collect();
            ensure(*c.singularities() == sings, || {
                format!("pencil m={m} {spec}: {} != {sings}", c.singularities())
            })?;

            let c = apply(&lines, &spec).map_err(|e| e.to_string())?;
            let free = if m == 2 { "Z".to_string() } else { format!("Z^{}", m - 1) };
            let want: GroupDescriptor = format!("{free} (+) Z/{n}").parse().unwrap();
            ensure(*c.group() == want, || format!("lines m={m} {spec}: {} != {want}", c.group()))?;
            let mut sings: Vec<SingularityType> = (0..m * (m - 1) / 2).map(|_| "[2]".parse().unwrap()).collect();
            sings.extend(expected_added(m, &ns));
            let sings: SingularityMultiset = sings.into_iter().collect();
            ensure(*c.singularities() == sings, || {
                format!("lines m={m} {spec}: {} != {sings}", c.singularities())
            })?;
        }
    }
    Ok(())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Invariant factors of a sum of cyclic groups via prime-power splitting.
fn invariant_factors(orders: &[u64]) -> (usize, Vec<u64>) {
    let free = orders.iter().filter(|&&o| o == 0).count();
    let mut by_prime: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
    for &o in orders.iter().filter(|&&o| o > 1) {
        let mut rest = o;
        let mut p = 2;
        while rest > 1 {
            let mut q = 1;
            while rest % p == 0 {
                rest /= p;
                q *= p;
            }
            if q > 1 {
                by_prime.entry(p).or_default().push(q);
            }
            p += 1;
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u64; len];
    for powers in by_prime.values_mut() {
        powers.sort_unstable_by(|a, b| b.cmp(a));
        for (i, q) in powers.iter().enumerate() {
            factors[len - 1 - i] *= q;
        }
    }
    (free, factors)
}

fn criterion_7() -> Outcome {
    let h = |orders: &[u64]| AbelianInvariants::of_cyclic_summands(&orders.iter().map(|&o| big(o)).collect::<Vec<_>>());
    ensure(split_test(&h(&[2]), 1, &big(2)).kind == SplitKind::NonSplit, || "Z/2, r=1, N=2".into())?;
    ensure(
        split_test(&h(&[3]), 1, &big(2)).kind == SplitKind::SplitsAsDirectSum,
        || "Z/3, r=1, N=2".into(),
    )?;
    ensure(split_test(&h(&[0, 2]), 1, &big(2)).kind == SplitKind::Unknown, || "Z+Z/2".into())?;

    let orders = [0u64, 2, 3, 4, 5, 6];
    let mut lists: Vec<Vec<u64>> = vec![vec![]];
    for len in 1..=3 {
        for t in tuples(len, orders.len() as u64).into_iter().filter(|t| t.len() == len) {
            let list: Vec<u64> = t.iter().map(|&i| orders[i as usize - 1]).collect();
            if list.windows(2).all(|w| w[0] <= w[1]) {
                lists.push(list);
            }
        }
    }
    for list in &lists {
        let (free, factors) = invariant_factors(list);
        for r in 1..=3usize {
            for n in 2..=6u64 {
                let got = split_test(&h(list), r, &big(n)).kind;
                let summands = free + factors.len();
                let want = if summands == r && factors.iter().all(|&f| gcd(f, n) != 1) {
                    SplitKind::NonSplit
                } else if free == 0 && gcd(factors.iter().product(), n) == 1 {
                    SplitKind::SplitsAsDirectSum
                } else {
                    SplitKind::Unknown
                };
                ensure(got == want, || format!("{list:?} r={r} N={n}: {got:?} != {want:?}"))?;
            }
        }
    }
    let four: GroupDescriptor = "Z/4".parse().unwrap();
    let two_two = GroupDescriptor::direct_sum(vec![GroupDescriptor::Cyclic(big(2)), GroupDescriptor::Cyclic(big(2))]);
    ensure(four != two_two, || "Z/4 equals Z/2 (+) Z/2".into())?;
    let conic = apply(&seed_smooth(2).unwrap(), &ConstructionSpec::Uludag(1)).map_err(|e| e.to_string())?;
    ensure(*conic.group() == four, || format!("conic lift {}", conic.group()))
}

/// Determinant by fraction-free (Bareiss) elimination.
fn bareiss_det(m: [[i64; 3]; 3]) -> i64 {
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..2 {
        if a[k][k] == 0 {
            match (k + 1..3).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..3 {
            for j in k + 1..3 {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[2][2]) as i64
}

fn gcd_i(a: i64, b: i64) -> i64 {
    gcd(a.unsigned_abs(), b.unsigned_abs()) as i64
}

/// gcd of all `k x k` minors.
fn determinantal_divisor(m: [[i64; 3]; 3], k: usize) -> i64 {
    let idx: Vec<Vec<usize>> = match k {
        1 => (0..3).map(|i| vec![i]).collect(),
        2 => vec![vec![0, 1], vec![0, 2], vec![1, 2]],
        _ => vec![vec![0, 1, 2]],
    };
    let mut g = 0;
    for rs in &idx {
        for cs in &idx {
            let minor = match k {
                1 => m[rs[0]][cs[0]],
                2 => m[rs[0]][cs[0]] * m[rs[1]][cs[1]] - m[rs[0]][cs[1]] * m[rs[1]][cs[0]],
                _ => bareiss_det(m),
            };
            g = gcd_i(g, minor);
        }
    }
    g
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for trial in 0..500 {
        let mut m = [[0i64; 3]; 3];
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                *x = rng.gen_range(-9..=9);
            }
        }
        let rows: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let factors = smith_normal_form(&IntMatrix::from_rows(&rows));
        ensure(factors.iter().all(|f| f.is_positive()), || format!("#{trial} {m:?}: nonpositive factor"))?;
        ensure(
            factors.windows(2).all(|w| (&w[1] % &w[0]) == BigInt::from(0)),
            || format!("#{trial} {m:?}: {factors:?} breaks the divisibility chain"),
        )?;
        // d_k = D_k / D_{k-1}
        let mut prev = 1i64;
        let mut rank = 0;
        for k in 1..=3 {
            let dk = determinantal_divisor(m, k);
            if dk == 0 {
                break;
            }
            rank = k;
            let want = BigInt::from(dk / prev);
            ensure(factors.get(k - 1) == Some(&want), || {
                format!("#{trial} {m:?}: factor {k} is {:?}, minors give {want}", factors.get(k - 1))
            })?;
            prev = dk;
        }
        ensure(factors.len() == rank, || format!("#{trial} {m:?}: rank {} != {rank}", factors.len()))?;
        let det = bareiss_det(m);
        if det != 0 {
            let product: BigInt = factors.iter().product();
            ensure(product == BigInt::from(det.abs()), || format!("#{trial} {m:?}: {product} != |{det}|"))?;
        }
    }
    Ok(())
}

fn sextic_pair() -> ZariskiPairRecord {
    let cusps: SingularityMultiset = (0..6).map(|_| "[2]".parse().unwrap()).collect();
    let left = CurveDatum::custom(vec![big(6)], cusps.clone(), "Z/6".parse().unwrap(), &[]).unwrap();
    let right = CurveDatum::custom(
        vec![big(6)],
        cusps,
        "Group(Z/2*Z/3)".parse().unwrap(),
        &[(Property::Cyclic, Tri::False)],
    )
    .unwrap();
    ZariskiPairRecord::seed(left, right)
}

fn criterion_9() -> Outcome {
    let family = enumerate_family(&sextic_pair(), 2).map_err(|e| e.to_string())?;
    ensure(family.len() == 3, || format!("{} records", family.len()))?;
    let want = ["Z/12", "Z/18", "Z/18"];
    for (rec, g) in family.iter().zip(want) {
        ensure(rec.generation() == 1, || "generation".into())?;
        ensure(rec.combinatorics_equal(), || "combinatorics differ".into())?;
        ensure(rec.left().group().to_string() == g, || format!("{} != {g}", rec.left().group()))?;
        ensure(rec.right().props().get(Property::Cyclic) == Tri::False, || "right became cyclic?".into())?;
    }
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            ensure(family[i].left().singularities() != family[j].left().singularities(), || {
                format!("records {i} and {j} share singularities")
            })?;
        }
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    let general = ConstructionSpec::General(vec![1, 1]);
    let uludag = ConstructionSpec::Uludag(1);
    ensure(general.kernel_order() == big(3), || "general(1,1) kernel".into())?;
    let twice = uludag.kernel_order() * uludag.kernel_order();
    ensure(twice == big(4), || "uludag(1) twice".into())?;

    let seed = seed_smooth(2).unwrap();
    let once = apply(&seed, &general).map_err(|e| e.to_string())?;
    let two = apply(&apply(&seed, &uludag).unwrap(), &uludag).map_err(|e| e.to_string())?;
    ensure(once.group().order() == Some(big(6)) && two.group().order() == Some(big(8)), || {
        format!("orders {:?} vs {:?}", once.group().order(), two.group().order())
    })?;
    ensure(once.singularities() != two.singularities(), || "same singularities".into())?;
    let want_once: SingularityMultiset = ["[2]", "[2]", "[4,2,2]"].iter().map(|s| s.parse().unwrap()).collect();
    let want_two: SingularityMultiset = ["[2]", "[2,2]", "[4]", "[4,4]"].iter().map(|s| s.parse().unwrap()).collect();
    ensure(*once.singularities() == want_once, || format!("general: {}", once.singularities()))?;
    ensure(*two.singularities() == want_two, || format!("twice: {}", two.singularities()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("degree formula", criterion_1),
        ("self-intersection audit", criterion_2),
        ("kernel order via abelianization", criterion_3),
        ("meridian closed forms", criterion_4),
        ("smooth-curve family", criterion_5),
        ("line-arrangement families", criterion_6),
        ("split / non-split", criterion_7),
        ("Smith normal form oracle", criterion_8),
        ("Zariski lifting", criterion_9),
        ("non-reproducibility pin", criterion_10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(f).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
