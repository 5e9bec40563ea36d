//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.
//!
//! Every criterion recomputes its numbers with a small independent oracle (plain
//! bitmask or boolean-vector arithmetic) and cross-checks the library against it.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sumsetlab::bounds::{alpha, f, f2, f_prime, k_of, k_of_n, kneser_check, m_of, n0_check, n_k, BoundTable};
use sumsetlab::group::{generated_subgroup, GroupSpec};
use sumsetlab::procedures::{
    averaging_lemma, expansion_lemma, increment_lemma, multiplicity_decomposition, olson_pipeline, olson_test_set, stage_bound_audit,
    LemmaVerdict,
};
use sumsetlab::search::{
    construction_family, find_nontrivial_stab_witness, max_coprime_noncovering, min_ratio_scan,
    nontrivial_stab_witnesses, ConstructionKind,
};
use sumsetlab::setops::{lambda_all, level_set, rho_all, sigma, stabilizer, sumset, ElementSet};

type Outcome = Result<String, String>;
type Criterion = (u8, &'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: sumsetlab::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Subset sums of residues mod `n` by a boolean-vector fold.
fn naive_sigma_mod(n: usize, a: &[usize]) -> Vec<bool> {
    let mut reach = vec![false; n];
    reach[0] = true;
    for &x in a {
        let prev = reach.clone();
        for (r, &hit) in prev.iter().enumerate() {
            if hit {
                reach[(r + x) % n] = true;
            }
        }
    }
    reach
}

/// Subset-sum bitmask of `mask ⊆ Z_p` (bit `i` is residue `i`).
fn sigma_mask(p: u32, mask: u32) -> u32 {
    let full = (1u32 << p) - 1;
    let rot = |s: u32, c: u32| ((s << c) | (s >> (p - c))) & full;
    let mut s = 1u32;
    for c in 0..p {
        if mask >> c & 1 == 1 && c != 0 {
            s |= rot(s, c);
        }
    }
    s
}

fn rot_mask(p: u32, s: u32, c: u32) -> u32 {
    let full = (1u32 << p) - 1;
    if c.is_multiple_of(p) {
        s
    } else {
        ((s << (c % p)) | (s >> (p - c % p))) & full
    }
}

/// Every abelian group given by invariant factors `d_1 | d_2 | ...` of order at most `max`.
fn groups_up_to(max: u64) -> Vec<Vec<u64>> {
    fn extend(prefix: &mut Vec<u64>, order: u64, max: u64, out: &mut Vec<Vec<u64>>) {
        let last = *prefix.last().expect("nonempty");
        let mut next = last;
        while order * next <= max {
            prefix.push(next);
            out.push(prefix.clone());
            extend(prefix, order * next, max, out);
            prefix.pop();
            next += last;
        }
    }
    let mut out = vec![vec![1]];
    for d in 2..=max {
        let mut prefix = vec![d];
        out.push(prefix.clone());
        extend(&mut prefix, d, max, &mut out);
    }
    out
}

fn random_subset(g: &GroupSpec, rng: &mut ChaCha8Rng) -> ElementSet {
    let density: f64 = rng.gen();
    ElementSet::from_elements(g, g.elements().filter(|_| rng.gen_bool(density)))
}

fn random_small_nonempty(g: &GroupSpec, rng: &mut ChaCha8Rng, max_len: usize) -> ElementSet {
    let n = g.order();
    let len = rng.gen_range(1..=max_len.min(n));
    let mut s = ElementSet::empty(g);
    while s.len() < len {
        s.insert(g.element(rng.gen_range(0..n)).expect("in range"));
    }
    s
}

/// Sumset by pairwise addition.
fn naive_sumset(x: &ElementSet, y: &ElementSet) -> ElementSet {
    let g = x.group();
    ElementSet::from_elements(g, x.iter().flat_map(|a| y.iter().map(move |b| g.add(a, b))))
}

/// Order of `{h : S + h = S}` by direct testing of each candidate in `S - s₀`.
fn naive_stab_order(s: &ElementSet) -> usize {
    let g = s.group();
    let Some(s0) = s.min_element() else { return g.order() };
    s.iter()
        .map(|x| g.sub(x, s0))
        .filter(|&h| s.iter().all(|y| s.contains(g.add(y, h))))
        .count()
}

// 1. interval family
fn interval_family() -> Outcome {
    let mut notes = Vec::new();
    for n in [5u64, 10, 20, 50] {
        let c = lib(construction_family(ConstructionKind::Interval, n))?;
        ensure(c.all_hold(), || format!("n={n}: failed {:?}", c.failures()))?;
        let big_n = c.group.order();
        let residues: Vec<usize> = (1..=n as usize).flat_map(|i| [i, big_n - i]).collect();
        let oracle = naive_sigma_mod(big_n, &residues).iter().filter(|&&b| b).count();
        ensure(oracle as u64 == n * (n + 1) + 1, || format!("n={n}: oracle |Σ|={oracle}"))?;
        ensure(oracle == c.sigma.len(), || format!("n={n}: library {} vs oracle {oracle}", c.sigma.len()))?;
        let ratio = c.sigma.len() as f64 / (c.set.len() * c.set.len()) as f64;
        if n == 50 {
            ensure((ratio - 0.25).abs() <= 0.01, || format!("ratio(50)={ratio}"))?;
        }
        notes.push(format!("n={n} N={big_n} ratio={ratio:.4}"));
    }
    Ok(notes.join(", "))
}

// 2. unit interval in Z_{p²}
fn unit_interval_family() -> Outcome {
    let mut notes = Vec::new();
    for p in [3u64, 5, 7, 11, 13, 31] {
        let c = lib(construction_family(ConstructionKind::UnitIntervalPsq, p))?;
        ensure(c.all_hold(), || format!("p={p}: failed {:?}", c.failures()))?;
        let n = (p * p) as usize;
        let residues: Vec<usize> = (1..p as usize).flat_map(|i| [i, n - i]).collect();
        ensure(residues.iter().all(|&r| r.gcd(&(p as usize)) == 1), || format!("p={p}: non-unit"))?;
        let reach = naive_sigma_mod(n, &residues);
        let probe = (p * (p - 1) / 2 + 1) as usize;
        ensure(!reach[probe], || format!("p={p}: oracle reaches {probe}"))?;
        let lib_count = c.sigma.len();
        ensure(reach.iter().filter(|&&b| b).count() == lib_count, || format!("p={p}: |Σ| mismatch"))?;
        let expect = rat(2, 1) - rat(2, p as i64);
        ensure(c.size_over_root() == Some(expect.clone()), || format!("p={p}: |A|/p = {:?}", c.size_over_root()))?;
        notes.push(format!("p={p} |A|/p={expect}"));
    }
    Ok(notes.join(", "))
}

// 3. |Σ(A)| >= |A|²/64 over Z_p
fn thm1_sweep() -> Outcome {
    let mut notes = Vec::new();
    for p in [5u32, 7, 11, 13] {
        let g = lib(GroupSpec::cyclic(p as u64))?;
        let report = lib(min_ratio_scan(&g, false, None))?;
        ensure(report.meta.violations == 0, || format!("Z{p}: scan counted {} violations", report.meta.violations))?;

        let full = (1u32 << p) - 1;
        let mut min_by_card: BTreeMap<usize, usize> = BTreeMap::new();
        let mut checked = 0u64;
        for mask in (0..1u32 << p).filter(|m| m & 1 == 0) {
            let s = sigma_mask(p, mask);
            if s == full {
                continue;
            }
            checked += 1;
            let (card, size) = (mask.count_ones() as usize, s.count_ones() as usize);
            ensure(64 * size >= card * card, || format!("Z{p}: mask {mask:#b} violates"))?;
            let e = min_by_card.entry(card).or_insert(size);
            *e = (*e).min(size);
        }
        ensure(checked == report.meta.admissible, || {
            format!("Z{p}: admissible {} vs oracle {checked}", report.meta.admissible)
        })?;
        let scanned: BTreeMap<usize, usize> = report.rows.iter().map(|r| (r.card, r.sigma_size)).collect();
        min_by_card.remove(&0);
        ensure(scanned == min_by_card, || format!("Z{p}: per-card minima differ"))?;
        notes.push(format!("Z{p}: {checked} sets"));
    }
    Ok(notes.join(", "))
}

// 4. Kneser
fn kneser() -> Outcome {
    let check = |sets: &[ElementSet]| -> Result<(), String> {
        let out = lib(kneser_check(sets))?;
        let mut total = sets[0].clone();
        for s in &sets[1..] {
            total = naive_sumset(&total, s);
        }
        let h = naive_stab_order(&total);
        let rhs = sets.iter().map(|s| s.len() as i64).sum::<i64>() - (sets.len() as i64 - 1) * h as i64;
        ensure(out.sumset == total, || "sumset differs from pairwise oracle".into())?;
        ensure(out.h.order() == h && out.rhs == rhs, || format!("|H| {} vs {h}", out.h.order()))?;
        ensure(out.holds && total.len() as i64 >= rhs, || {
            format!("violated: {} vs {rhs} for {:?}", total.len(), sets.iter().map(|s| s.format_elements()).collect::<Vec<_>>())
        })
    };
    let mut pairs = 0u64;
    for factors in [vec![6u64], vec![8], vec![2, 4]] {
        let g = lib(GroupSpec::new(&factors))?;
        let n = g.order();
        let all: Vec<ElementSet> = (1..1u64 << n)
            .map(|m| ElementSet::from_indices(&g, (0..n).filter(|i| m >> i & 1 == 1)).expect("in range"))
            .collect();
        for x in &all {
            for y in &all {
                check(&[x.clone(), y.clone()])?;
                pairs += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b6e);
    let groups: Vec<Vec<u64>> = groups_up_to(1000).into_iter().filter(|f| f.iter().product::<u64>() >= 2).collect();
    for _ in 0..10_000 {
        let g = lib(GroupSpec::new(&groups[rng.gen_range(0..groups.len())]))?;
        let triple: Vec<ElementSet> = (0..3).map(|_| random_small_nonempty(&g, &mut rng, 24)).collect();
        check(&triple)?;
    }
    Ok(format!("{pairs} exhaustive pairs, 10000 random triples"))
}

// 5. identity suite
fn identity_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1d5);
    let groups = groups_up_to(64);
    let mut sets = 0;
    for factors in &groups {
        let g = lib(GroupSpec::new(factors))?;
        for _ in 0..100 {
            let s = random_subset(&g, &mut rng);
            let lam = lambda_all(&s);
            let rho = rho_all(&s);
            let comp = lambda_all(&s.complement());
            for x in g.elements() {
                let i = x.index();
                ensure(rho[i] + lam[i] == s.len(), || format!("{g}: ρ+λ ≠ |S| at {i}"))?;
                ensure(lam[i] == lam[g.neg(x).index()], || format!("{g}: λ not symmetric at {i}"))?;
                ensure(lam[i] == comp[i], || format!("{g}: complement identity fails at {i}"))?;
                for y in g.elements() {
                    let j = y.index();
                    ensure(lam[g.add(x, y).index()] <= lam[i] + lam[j], || format!("{g}: subadditivity at {i},{j}"))?;
                }
            }
            let total: usize = rho.iter().sum();
            ensure(total == s.len() * s.len(), || format!("{g}: Σρ = {total}"))?;
            let levels: usize = (1..=s.len()).map(|t| level_set(&s, t).len()).sum();
            ensure(levels == total, || format!("{g}: level sets sum to {levels}"))?;
            sets += 1;
        }
    }

    // fold identity over Z10
    let z10 = lib(GroupSpec::cyclic(10))?;
    for mask in (0..1u32 << 10).filter(|m| m & 1 == 0) {
        let b = ElementSet::from_indices(&z10, (0..10).filter(|i| mask >> i & 1 == 1)).expect("in range");
        let sb = sigma(&b);
        for c in (1..10).filter(|c| mask >> c & 1 == 0) {
            let mut bc = b.clone();
            bc.insert(lib(z10.element(c))?);
            let expect = sb.union(&sb.shift(lib(z10.element(c))?));
            ensure(sigma(&bc) == expect, || format!("fold fails for {} + {c}", b.format_elements()))?;
        }
    }

    // factorization over every bipartition, p <= 11
    let mut bipartitions = 0u64;
    for p in [2usize, 3, 5, 7, 11] {
        let g = lib(GroupSpec::cyclic(p as u64))?;
        let sig: Vec<ElementSet> = (0..1u32 << p)
            .map(|m| sigma(&ElementSet::from_indices(&g, (0..p).filter(|i| m >> i & 1 == 1)).expect("in range")))
            .collect();
        for a in (0..1u32 << p).filter(|m| m & 1 == 0) {
            let mut b = a;
            loop {
                let joined = lib(sumset(&sig[b as usize], &sig[(a & !b) as usize]))?;
                ensure(joined == sig[a as usize], || format!("Z{p}: factorization fails for {a:#b} at {b:#b}"))?;
                bipartitions += 1;
                if b == 0 {
                    break;
                }
                b = (b - 1) & a;
            }
        }
    }

    // stab(Σ(B)) ≤ stab(Σ(A)) for B ⊆ A
    for factors in [vec![12u64], vec![2, 4], vec![2, 6], vec![8]] {
        let g = lib(GroupSpec::new(&factors))?;
        let n = g.order();
        let stabs: Vec<_> = (0..1u32 << n)
            .map(|m| stabilizer(&sigma(&ElementSet::from_indices(&g, (1..n).filter(|i| m >> i & 1 == 1)).expect("in range"))))
            .collect();
        for a in (0..1u32 << n).filter(|m| m & 1 == 0) {
            let mut b = a;
            loop {
                ensure(stabs[b as usize].is_subgroup_of(&stabs[a as usize]), || format!("{g}: stab not monotone {b:#b} ⊆ {a:#b}"))?;
                if b == 0 {
                    break;
                }
                b = (b - 1) & a;
            }
        }
    }
    // averaging lemma over every (S, C) in groups of order 8
    let mut averaging = 0u64;
    for factors in [vec![8u64], vec![2, 4]] {
        let g = lib(GroupSpec::new(&factors))?;
        let all: Vec<ElementSet> =
            (0..256u32).map(|m| ElementSet::from_indices(&g, (0..8).filter(|i| m >> i & 1 == 1)).expect("in range")).collect();
        for s in &all {
            for c in &all {
                let v = averaging_lemma(s, c);
                ensure(!v.is_violation(), || format!("{g}: averaging fails S={} C={}", s.format_elements(), c.format_elements()))?;
                averaging += (v == LemmaVerdict::Holds) as u64;
            }
        }
    }
    Ok(format!(
        "{} groups, {sets} random sets, {bipartitions} bipartitions, averaging applicable {averaging} times",
        groups.len()
    ))
}

// 6. increment and expansion lemmas over Z_p
fn lemma_conformance() -> Outcome {
    let mut applicable = (0u64, 0u64);
    for p in [2u32, 3, 5, 7, 11, 13] {
        let g = lib(GroupSpec::cyclic(p as u64))?;
        let full = (1u32 << p) - 1;
        let half = (p - 1) / 2;
        // antisymmetric C: for each pair {x, p-x} choose none, x or p-x
        let mut cs = Vec::new();
        for code in 0..3u32.pow(half) {
            let (mut m, mut c) = (0u32, code);
            for x in 1..=half {
                match c % 3 {
                    1 => m |= 1 << x,
                    2 => m |= 1 << (p - x),
                    _ => {}
                }
                c /= 3;
            }
            cs.push(m);
        }
        let c_sets: Vec<ElementSet> = cs
            .iter()
            .map(|&m| ElementSet::from_indices(&g, (0..p as usize).filter(|i| m >> i & 1 == 1)).expect("in range"))
            .collect();
        for s_mask in 0..=full {
            let s = ElementSet::from_indices(&g, (0..p as usize).filter(|i| s_mask >> i & 1 == 1)).expect("in range");
            let ones = s_mask.count_ones() as usize;
            let def = ones.min(p as usize - ones);
            let lam: Vec<usize> =
                (0..p).map(|c| (rot_mask(p, s_mask, c) & !s_mask).count_ones() as usize).collect();
            for (cm, cset) in cs.iter().zip(&c_sets) {
                let k = cm.count_ones() as usize;
                let oracle = if k == 0 || def <= 2 * k {
                    LemmaVerdict::NotApplicable
                } else {
                    let best = (0..p).filter(|c| cm >> c & 1 == 1).map(|c| lam[c as usize]).max().unwrap_or(0);
                    if def * best + 4 * k * k >= def * k {
                        LemmaVerdict::Holds
                    } else {
                        LemmaVerdict::Violated
                    }
                };
                let got = increment_lemma(&s, cset);
                ensure(got == oracle, || format!("Z{p}: S={s_mask:#b} C={cm:#b}: {got:?} vs oracle {oracle:?}"))?;
                ensure(!got.is_violation(), || format!("Z{p}: increment lemma violated S={s_mask:#b} C={cm:#b}"))?;
                applicable.0 += (got == LemmaVerdict::Holds) as u64;
            }
        }
        for (cm, cset) in cs.iter().zip(&c_sets) {
            let k = cm.count_ones() as usize;
            let neg = (1..p).filter(|x| cm >> x & 1 == 1).fold(0u32, |m, x| m | 1 << (p - x));
            let star = cm | neg | 1;
            let mut acc = 1u32;
            for r in 1..=p as usize {
                let mut next = 0u32;
                for c in (0..p).filter(|c| star >> c & 1 == 1) {
                    next |= rot_mask(p, acc, c);
                }
                acc = next;
                let got = lib(expansion_lemma(cset, r))?;
                let holds = acc == full || acc.count_ones() as usize >= 2 * r * k;
                ensure(!got.is_violation() && holds, || format!("Z{p}: expansion fails C={cm:#b} r={r}"))?;
                applicable.1 += (got == LemmaVerdict::Holds) as u64;
            }
        }
    }
    Ok(format!("increment applicable {} times, expansion {} times", applicable.0, applicable.1))
}

// 7. two-halves pipeline on the constructed test sets
fn olson_end_to_end() -> Outcome {
    let mut notes = Vec::new();
    for n in [1009u64, 10007] {
        let a = lib(olson_test_set(n))?;
        let out = lib(olson_pipeline(n, &a))?;
        ensure(out.covers, || format!("n={n}: pipeline reports non-covering"))?;
        lib(out.cert1.verify())?;
        lib(out.cert2.verify())?;
        let half = n as usize / 2;
        ensure(out.cert1.final_span > half && out.cert2.final_span > half, || format!("n={n}: half not past n/2"))?;
        let rows: Vec<_> = [&out.cert1, &out.cert2].iter().flat_map(|c| stage_bound_audit(c, n)).collect();
        ensure(!rows.is_empty(), || format!("n={n}: no audit rows"))?;
        let held = rows.iter().filter(|r| r.held).count();
        notes.push(format!(
            "n={n} |A|={} steps={}+{} audit {held}/{} held",
            a.len(),
            out.cert1.steps.len(),
            out.cert2.steps.len(),
            rows.len()
        ));
    }
    Ok(notes.join(", "))
}

// 8. largest non-covering unit sets
fn coprime_extremum() -> Outcome {
    let phi = |n: u64| (1..n).filter(|u| u.gcd(&n) == 1).count();
    let mut checked = Vec::new();
    for n in (2u64..=36).filter(|&n| phi(n) <= 16) {
        let e = lib(max_coprime_noncovering(n))?;
        ensure(e.bound_holds && (e.m * e.m) as u64 <= 64 * n, || format!("n={n}: m={} exceeds 8√n", e.m))?;
        ensure(!sigma(&e.witness).is_full() && e.witness.len() == e.m, || format!("n={n}: bad witness"))?;
        if e.phi <= 12 {
            let units: Vec<usize> = (1..n as usize).filter(|u| u.gcd(&(n as usize)) == 1).collect();
            let best = (0..1u32 << units.len())
                .filter(|m| {
                    let chosen: Vec<usize> = (0..units.len()).filter(|j| m >> j & 1 == 1).map(|j| units[j]).collect();
                    !naive_sigma_mod(n as usize, &chosen).iter().all(|&b| b)
                })
                .map(|m| m.count_ones() as usize)
                .max()
                .unwrap_or(0);
            ensure(best == e.m, || format!("n={n}: oracle m={best} vs {}", e.m))?;
        }
        checked.push(n);
    }
    let mut notes = vec![format!("{} moduli", checked.len())];
    for p in [3u64, 5] {
        let n = p * p;
        let e = lib(max_coprime_noncovering(n))?;
        let c = lib(construction_family(ConstructionKind::UnitIntervalPsq, p))?;
        ensure(!c.sigma.is_full() && c.set.len() as u64 == 2 * p - 2, || format!("p={p}: construction covers"))?;
        ensure(e.m as u64 >= 2 * p - 2, || format!("n={n}: m={} below 2p-2", e.m))?;
        ensure(e.bound_holds, || format!("n={n}: m={} exceeds 8√n", e.m))?;
        notes.push(format!("n={n} m={}", e.m));
    }
    Ok(notes.join(", "))
}

// 9. nontrivially stabilized spans in Z12
fn z12_witness() -> Outcome {
    let g = lib(GroupSpec::cyclic(12))?;
    let (a, h) = lib(find_nontrivial_stab_witness(&g))?.ok_or("no witness in Z12")?;
    let all = lib(nontrivial_stab_witnesses(&g))?;
    ensure(!all.is_empty(), || "empty witness list".into())?;
    for (a, h) in std::iter::once((a.clone(), h.clone())).chain(all.iter().cloned()) {
        let span = sigma(&a);
        ensure(!h.is_trivial() && !h.is_whole(), || format!("H={} not proper", h.carrier().format_elements()))?;
        ensure(naive_stab_order(&span) == h.order(), || format!("A={}: stab order", a.format_elements()))?;
        let gens: Vec<_> = h.carrier().elements();
        ensure(generated_subgroup(&g, &gens).order() == h.order(), || "H is not closed".into())?;
        let d = lib(multiplicity_decomposition(&a, &h))?;
        ensure(d.failures().is_empty(), || format!("A={}: {:?}", a.format_elements(), d.failures()))?;
        let fact = d.factorization.ok_or("factorization not evaluated")?;
        ensure(fact.holds(), || format!("A={}: factorization fails", a.format_elements()))?;
        ensure(d.sigma_size == h.order() * d.quotient_sumset.len(), || "|Σ(A)| ≠ |H|·|quotient sumset|".into())?;
    }
    Ok(format!("A={} H={}, {} witnesses", a.format_elements(), h.carrier().format_elements(), all.len()))
}

// 10. sequences and bound functions
fn sequences() -> Outcome {
    ensure(alpha(9).map_err(|e| e.to_string())? == rat(1, 64), || "α9".into())?;
    ensure(lib(alpha(10))? == rat(3, 160), || "α10".into())?;
    ensure(lib(n_k(9))? == BigUint::one() && lib(n_k(10))? == BigUint::one() << 100u32, || "n_k".into())?;
    let table = lib(BoundTable::up_to(64))?;
    ensure(table.invariant_failures().is_empty(), || format!("{:?}", table.invariant_failures()))?;
    let mut a = rat(1, 64);
    for k in 10..=64u64 {
        let cap = rat(1, 2) - BigRational::new(BigInt::one(), BigInt::one() << (k - 1));
        let next = (&a * rat(6, 5)).min(cap);
        ensure(next >= a, || format!("α not monotone at {k}"))?;
        a = next;
        ensure(table.alpha(k) == Some(&a), || format!("α{k} differs from recursion"))?;
    }
    let two_n10 = BigUint::from(2u32) << 100u32;
    ensure(lib(k_of_n(&two_n10))? == 10 && lib(k_of_n(&(&two_n10 - 1u32)))? == 9, || "k(n) boundary".into())?;
    for n in 2u64..=3000 {
        let n2 = BigInt::from(n * n);
        let k = lib(k_of(n))?;
        ensure(k == 9, || format!("k({n})={k}"))?;
        let fv = lib(f(n))?;
        ensure(fv == rat(1, 128) - BigRational::new(BigInt::one(), n2.clone()), || format!("f({n})"))?;
        ensure(lib(f_prime(n))? == &fv - BigRational::new(BigInt::one(), n2), || format!("f'({n})"))?;
        if n >= 4 {
            let m = m_of(n);
            ensure(m * m <= n && (m + 1) * (m + 1) > n, || format!("m({n})"))?;
            let factor = BigRational::one() - rat(1, m as i64);
            ensure(lib(f2(n))? == &factor * &factor * lib(f_prime(m))?, || format!("f2({n})"))?;
        }
    }
    let edge = 160u64.pow(4);
    ensure(n0_check(edge) && !n0_check(edge - 1), || "n0 boundary".into())?;
    Ok("α9=1/64 α10=3/160, table to k=64, identities on n<=3000, n0 edge 160^4".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "interval family", Duration::from_secs(5), interval_family),
        (2, "unit interval in Z_p^2", Duration::from_secs(5), unit_interval_family),
        (3, "|A|^2/64 sweep over Z_p", Duration::from_secs(60), thm1_sweep),
        (4, "Kneser inequality", Duration::from_secs(120), kneser),
        (5, "identity suite", Duration::from_secs(120), identity_suite),
        (6, "increment and expansion lemmas", Duration::from_secs(600), lemma_conformance),
        (7, "two-halves pipeline", Duration::from_secs(60), olson_end_to_end),
        (8, "non-covering unit sets", Duration::from_secs(600), coprime_extremum),
        (9, "Z12 stabilizer witness", Duration::from_secs(10), z12_witness),
        (10, "sequences and bounds", Duration::from_secs(1), sequences),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if took <= limit => (true, d),
            Ok(d) => (false, format!("{d}; over the {}s limit", limit.as_secs())),
            Err(e) => (false, e),
        };
        failed += (!ok) as usize;
        println!("[{}] {id}: {name} ({:.2}s) {detail}", if ok { "PASS" } else { "FAIL" }, took.as_secs_f64());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
