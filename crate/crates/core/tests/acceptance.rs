//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::panic;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use dot_parser::{ast, canonical};
use pnchain::enumerate::{valid_insert_positions, ScanMode, DEFAULT_WORD_CAP};
use pnchain::graph::build_pn_graph_from;
use pnchain::{
    brute_force_pn_generators, brute_force_pn_words, build_pn_graph, chain, compose,
    emit_dot, enumerate_pn_words, extend_generators, extendable_parent, inversions,
    is_extension_critical, necessary_conditions, overlay_chain, swap_keeps_pn,
    swap_keeps_pn_oracle, words_from_generators, BinaryWord, Generator, GeneratorSet,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

// Independent oracles on bitmasks; position 1 is the most significant bit.

fn mask_of(w: &BinaryWord) -> u64 {
    w.bits().iter().fold(0, |m, &b| (m << 1) | b as u64)
}

fn window_ones(mask: u64, n: usize, start: usize, len: usize) -> u32 {
    let shifted = mask >> (n - (start - 1) - len);
    (shifted & ((1u64 << len) - 1)).count_ones()
}

fn oracle_pn(mask: u64, n: usize) -> bool {
    (1..=n).all(|len| {
        let prefix = window_ones(mask, n, 1, len);
        (1..=n + 1 - len).all(|s| window_ones(mask, n, s, len) <= prefix)
    })
}

fn oracle_pn_generator(perm: &[usize]) -> bool {
    let n = perm.len();
    let mut mask = (1u64 << n) - 1;
    if !oracle_pn(mask, n) {
        return false;
    }
    for &p in perm {
        mask &= !(1u64 << (n - p));
        if !oracle_pn(mask, n) {
            return false;
        }
    }
    true
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            cur.push(v);
            rec(rest, cur, out);
            cur.pop();
            rest.insert(i, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut (1..=n).collect(), &mut Vec::new(), &mut out);
    out
}

fn oracle_generators(n: usize) -> Vec<Vec<usize>> {
    permutations(n).into_iter().filter(|p| oracle_pn_generator(p)).collect()
}

fn values(gs: &GeneratorSet) -> Vec<Vec<usize>> {
    gs.iter().map(|g| g.values().to_vec()).collect()
}

fn gen(s: &str) -> Generator {
    s.parse().unwrap()
}

type Check = fn() -> Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    let t = start.elapsed();
    if t > budget {
        Err(format!("took {t:.1?}, budget {budget:?}"))
    } else {
        Ok(())
    }
}

fn c1_enumerator_oracle() -> Result<String, String> {
    let start = Instant::now();
    for n in 0..=16usize {
        let fast = enumerate_pn_words(n);
        let oracle: Vec<u64> = (0..1u64 << n).filter(|&m| oracle_pn(m, n)).collect();
        let got: Vec<u64> = fast.iter().map(mask_of).collect();
        ensure!(got == oracle, "n={n}: enumeration differs from bitmask oracle");
        ensure!(
            brute_force_pn_words(n).unwrap() == fast,
            "n={n}: enumeration differs from brute_force_pn_words"
        );
    }
    let small: Vec<usize> = (1..=4).map(|n| enumerate_pn_words(n).len()).collect();
    ensure!(small == [2, 3, 5, 8], "counts 1..4 = {small:?}");
    within(start, Duration::from_secs(60))?;
    Ok(format!("n<=16 set-equal, counts 1..4 = {small:?}"))
}

fn c2_generator_pipeline() -> Result<String, String> {
    let start = Instant::now();
    let mut level = GeneratorSet::level_one();
    for n in 1..=7usize {
        if n > 1 {
            level = extend_generators(&level);
        }
        let oracle = oracle_generators(n);
        ensure!(values(&level) == oracle, "n={n}: extension differs from oracle");
        ensure!(
            brute_force_pn_generators(n).unwrap() == level,
            "n={n}: extension differs from brute_force_pn_generators"
        );
    }
    let mut g4 = GeneratorSet::level_one();
    for _ in 2..=4 {
        g4 = extend_generators(&g4);
    }
    let expected: BTreeSet<Vec<usize>> =
        [vec![4, 3, 2, 1], vec![3, 4, 2, 1], vec![3, 2, 4, 1], vec![4, 2, 3, 1]].into_iter().collect();
    let got: BTreeSet<Vec<usize>> = values(&g4).into_iter().collect();
    ensure!(got == expected, "G_4 = {got:?}");
    let inv: Vec<usize> = ["3,2,4,1", "3,4,2,1", "4,3,2,1", "4,2,3,1"]
        .iter()
        .map(|s| inversions(&gen(s)))
        .collect();
    ensure!(inv == [4, 5, 6, 5], "inversions {inv:?}");
    within(start, Duration::from_secs(120))?;
    Ok(format!("n<=7 exact, |G_4|=4, inversions {inv:?}"))
}

fn c3_swap_theorem() -> Result<String, String> {
    let mut cases = 0usize;
    for n in 2..=7usize {
        for g in brute_force_pn_generators(n).unwrap().iter() {
            for j in 1..n {
                let fast = swap_keeps_pn(g, j).map_err(|e| e.to_string())?;
                let library_oracle = swap_keeps_pn_oracle(g, j).map_err(|e| e.to_string())?;
                let mut p = g.values().to_vec();
                p.swap(j - 1, j);
                let oracle = oracle_pn_generator(&p);
                ensure!(
                    fast == oracle && library_oracle == oracle,
                    "mismatch at {g} j={j}: theorem {fast}, oracle {oracle}"
                );
                cases += 1;
            }
        }
    }
    ensure!(!swap_keeps_pn(&gen("6,5,3,2,4,1"), 3).unwrap(), "653241/j=3 kept pn");
    ensure!(swap_keeps_pn(&gen("6,5,4,3,2,1"), 2).unwrap(), "654321/j=2 lost pn");
    Ok(format!("{cases} (generator, j) cases, 0 mismatches; 653241 j=3 and 654321 j=2 decided"))
}

fn c4_necessary_conditions() -> Result<String, String> {
    let start = Instant::now();
    let mut total = 0usize;
    for n in 1..=8usize {
        let oracle = oracle_generators(n);
        ensure!(
            values(&brute_force_pn_generators(n).unwrap()) == oracle,
            "n={n}: brute_force_pn_generators differs from oracle"
        );
        for p in &oracle {
            let g = Generator::new(p.clone()).unwrap();
            let nc = necessary_conditions(&g);
            ensure!(nc.last_is_one && p[n - 1] == 1, "{g}: last entry is not 1");
            ensure!(nc.first_flip_late_enough && 2 * p[0] > n, "{g}: first flip too early");
            total += 1;
        }
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!("{total} pn generators with n<=8"))
}

fn c5_counting_identity() -> Result<String, String> {
    for n in 0..=14usize {
        let here = enumerate_pn_words(n).len();
        let next = enumerate_pn_words(n + 1);
        let ending_zero = next.iter().filter(|w| w.get(n + 1) == Some(0)).count();
        let oracle = (0..1u64 << (n + 1)).filter(|&m| m & 1 == 0 && oracle_pn(m, n + 1)).count();
        ensure!(
            here == ending_zero && ending_zero == oracle,
            "n={n}: |PN(n)|={here}, ending in 0: {ending_zero}, oracle {oracle}"
        );
    }
    Ok("exact for n<=14".into())
}

fn c6_palindromes() -> Result<String, String> {
    let mut checked = 0usize;
    for n in 1..=14usize {
        for w in enumerate_pn_words(n).iter() {
            let bits = w.bits();
            let palindrome = bits.iter().eq(bits.iter().rev());
            if !palindrome || w.count_zeros() == 0 {
                continue;
            }
            ensure!(is_extension_critical(w).unwrap(), "{w} not extension-critical");
            ensure!(!oracle_pn((mask_of(w) << 1) | 1, n + 1), "{w}1 is pn by oracle");
            checked += 1;
        }
    }
    ensure!(checked > 0, "no palindromes found");
    Ok(format!("{checked} palindromes, 0 exceptions"))
}

fn c7_no_isolated_append_one() -> Result<String, String> {
    let mut checked = 0usize;
    for n in 1..=14usize {
        for w in enumerate_pn_words(n).iter() {
            let m = mask_of(w);
            if w.count_zeros() == 0 || !oracle_pn((m << 1) | 1, n + 1) {
                continue;
            }
            let v = extendable_parent(w)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("{w}: no extendable parent"))?;
            let vm = mask_of(&v);
            ensure!(
                vm & m == m && (vm ^ m).count_ones() == 1,
                "{v} is not a one-letter parent of {w}"
            );
            ensure!(oracle_pn(vm, n) && oracle_pn((vm << 1) | 1, n + 1), "{v} is not extendable");
            checked += 1;
        }
    }
    Ok(format!("{checked} words, every one has a witness"))
}

fn c8_composition() -> Result<String, String> {
    let mut pairs = 0usize;
    for n in 2..=6usize {
        let set = brute_force_pn_generators(n).unwrap();
        for g1 in set.iter() {
            for g2 in set.iter() {
                let c = compose(g1, g2).map_err(|e| e.to_string())?;
                ensure!(c.values()[n - 1] != 1, "{g1} o {g2} = {c} ends in 1");
                ensure!(!necessary_conditions(&c).hold(), "{c} passes necessary conditions");
                ensure!(!oracle_pn_generator(c.values()), "{c} is a pn generator");
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} ordered pairs for 2<=n<=6 (n=1 excluded: (1)o(1)=(1))"))
}

fn c9_gapless_insertions() -> Result<String, String> {
    let mut checked = 0usize;
    for n in 1..=7usize {
        for g in brute_force_pn_generators(n).unwrap().iter() {
            let full = valid_insert_positions(g, ScanMode::Full).map_err(|e| e.to_string())?;
            let early = valid_insert_positions(g, ScanMode::EarlyStop).map_err(|e| e.to_string())?;
            let oracle: Vec<usize> = (1..=n + 1)
                .filter(|&pos| {
                    let mut p = g.values().to_vec();
                    p.insert(pos - 1, n + 1);
                    oracle_pn_generator(&p)
                })
                .collect();
            let k = full.len();
            ensure!(full == oracle, "{g}: full scan {full:?}, oracle {oracle:?}");
            ensure!(full == early, "{g}: full {full:?}, early stop {early:?}");
            ensure!(full == (1..=k).collect::<Vec<_>>(), "{g}: gaps in {full:?}");
            checked += 1;
        }
    }
    Ok(format!("{checked} generators, all prefixes gapless"))
}

fn c10_chain_structure() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for n in [8usize, 16, 32, 64] {
        for _ in 0..1000 {
            let mut p: Vec<usize> = (1..=n).collect();
            p.shuffle(&mut rng);
            let g = Generator::new(p.clone()).unwrap();
            let c = chain(&g);
            ensure!(c.len() == n + 1, "{g}: chain length {}", c.len());
            ensure!(c.word(1).bits().iter().all(|&b| b == 1), "{g}: first word not 1^n");
            for i in 1..=n {
                let (u, v) = (c.word(i).bits(), c.word(i + 1).bits());
                let diff: Vec<usize> = (0..n).filter(|&k| u[k] != v[k]).map(|k| k + 1).collect();
                ensure!(diff == [p[i - 1]] && u[p[i - 1] - 1] == 1, "{g}: step {i} is not flip({})", p[i - 1]);
                let zeros = v.iter().filter(|&&b| b == 0).count();
                ensure!(zeros == i, "{g}: word {} has {zeros} zeros", i + 1);
            }
            ensure!(c.word(n + 1).bits().iter().all(|&b| b == 0), "{g}: last word not 0^n");
        }
    }
    Ok("4000 seeded random generators".into())
}

fn c11_chain_coverage() -> Result<String, String> {
    for n in 1..=7usize {
        let covered = words_from_generators(&brute_force_pn_generators(n).unwrap());
        ensure!(covered == enumerate_pn_words(n), "n={n}: chains miss some pn words");
    }
    Ok("n<=7 exact".into())
}

fn c12_benchmark() -> Result<String, String> {
    let start = Instant::now();
    let r = pnchain::bench::run_bench(20, DEFAULT_WORD_CAP, 3).map_err(|e| e.to_string())?;
    ensure!(r.counts_agree, "paths disagree");
    ensure!(r.extension_step.candidates == enumerate_pn_words(19).len() as u64, "candidate count");
    ensure!(r.candidate_ratio < 0.05, "candidate ratio {:.4}", r.candidate_ratio);
    ensure!(r.speedup >= 5.0, "speedup {:.1}x", r.speedup);
    within(start, Duration::from_secs(120))?;
    Ok(format!(
        "|PN(20)|={}, candidates {} ({:.2}% of 2^20), speedup {:.1}x",
        r.extension_step.count,
        r.extension_step.candidates,
        100.0 * r.candidate_ratio,
        r.speedup
    ))
}

fn c13_graph() -> Result<String, String> {
    let g = build_pn_graph(4).map_err(|e| e.to_string())?;
    ensure!(g.nodes().len() == 8, "{} nodes", g.nodes().len());
    let oracle = (0..16u64).filter(|&m| oracle_pn(m, 4)).count();
    ensure!(oracle == 8, "oracle count {oracle}");
    let mut overlays = 0;
    for gen4 in brute_force_pn_generators(4).unwrap().iter() {
        let o = overlay_chain(&g, gen4).map_err(|e| e.to_string())?;
        let c = chain(gen4);
        for i in 1..=4 {
            let u = g.index_of(c.word(i)).ok_or("chain word missing")?;
            let v = g.index_of(c.word(i + 1)).ok_or("chain word missing")?;
            ensure!(g.has_edge(u, v) && o.contains_edge(u, v), "{gen4}: step {i} is not an edge");
        }
        ensure!(c.word(1).to_string() == "1111" && c.word(5).to_string() == "0000", "endpoints");
        overlays += 1;
    }
    let dot = emit_dot(&g, None);
    let parsed = ast::Graph::try_from(dot.as_str()).map_err(|e| format!("DOT parse: {e}"))?;
    let parsed = canonical::Graph::from(parsed);
    ensure!(parsed.is_digraph, "not a digraph");
    ensure!(parsed.nodes.set.len() == 8, "{} parsed nodes", parsed.nodes.set.len());
    ensure!(parsed.edges.set.len() == g.edges().len(), "parsed edge count");
    let rebuilt = build_pn_graph_from(enumerate_pn_words(4));
    ensure!(emit_dot(&rebuilt, None) == dot, "DOT not deterministic");
    Ok(format!("8 nodes, {overlays} chains overlaid 1111->0000, DOT parses ({} edges)", g.edges().len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 13] = [
        ("enumerator equals brute-force oracle", c1_enumerator_oracle),
        ("generator pipeline", c2_generator_pipeline),
        ("swap theorem", c3_swap_theorem),
        ("necessary conditions", c4_necessary_conditions),
        ("counting identity", c5_counting_identity),
        ("palindromes are extension-critical", c6_palindromes),
        ("no isolated append-1", c7_no_isolated_append_one),
        ("composition", c8_composition),
        ("right-shift monotonicity", c9_gapless_insertions),
        ("chain structure", c10_chain_structure),
        ("chains cover all pn words", c11_chain_coverage),
        ("benchmark", c12_benchmark),
        ("graph", c13_graph),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(check).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let t = start.elapsed();
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{t:.2?}]", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {reason} [{t:.2?}]", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
