//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::process::Command;
use std::time::Instant;

use lrb::complexes::{
    clique_complex, is_chordal, leray_number, leray_number_exhaustive, order_complex,
    SimplicialComplex,
};
use lrb::constructions::{
    complex_sign_monoid, free_lrb, free_partially_commutative, karnofsky_rhodes, quiver_lrb,
    real_face_monoid_from_covectors, real_face_monoid_from_normals, rhodes_expansion,
    FiniteLattice, Quiver,
};
use lrb::field::Rationals;
use lrb::homological::Analysis;
use lrb::io::read_monoid;
use lrb::lrb::DEFAULT_SIZE_CAP;
use lrb::oracle::{
    idempotent_basis_check, idempotents, oracle_crosscheck, quiver_algebra_check,
    schutzenberger_check, AlgebraElement, DEFAULT_BAR_BUDGET,
};
use lrb::{FieldSpec, Graph, Lrb};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const Q: FieldSpec = FieldSpec::Rationals;
const F2: FieldSpec = FieldSpec::Prime(2);

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn lrb_bin(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_lrb"))
        .args(args)
        .output()
        .map_err(err)?;
    ensure!(
        out.status.success(),
        "lrb {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).map_err(err)
}

fn content(name: &str) -> BTreeSet<char> {
    name.chars().filter(|&c| c != '1').collect()
}

fn fig2_normals() -> Vec<Vec<BigRational>> {
    [[0, 1], [1, -1], [1, 1]]
        .iter()
        .map(|h| {
            h.iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect()
        })
        .collect()
}

const FIG2_SIGNS: [&str; 13] = [
    "000", "+++", "0++", "-++", "-+0", "-+-", "-0-", "---", "0--", "+--", "+-0", "+-+", "+0+",
];

/// Graphs on `n` vertices, one per isomorphism class.
fn graphs_up_to_isomorphism(n: usize) -> Vec<Graph> {
    let perms = permutations(n);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in Graph::all_graphs(n) {
        let canonical = perms
            .iter()
            .map(|p| {
                let mut edges: Vec<(usize, usize)> = g
                    .edges()
                    .iter()
                    .map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v])))
                    .collect();
                edges.sort_unstable();
                edges
            })
            .min()
            .unwrap();
        if seen.insert(canonical) {
            out.push(g);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn corpus() -> Vec<(String, Lrb)> {
    let cap = DEFAULT_SIZE_CAP;
    let mut out = Vec::new();
    let signs = ["0", "+", "-"].map(|s| s.parse().unwrap());
    out.push((
        "{0,+,-}".into(),
        real_face_monoid_from_covectors(&signs).unwrap(),
    ));
    out.push(("complex signs".into(), complex_sign_monoid(1, cap).unwrap()));
    for n in 1..=3 {
        let letters: Vec<String> = (0..n)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect();
        out.push((format!("F_{n}"), free_lrb(&letters, cap).unwrap()));
    }
    for n in 1..=4 {
        for g in graphs_up_to_isomorphism(n) {
            out.push((
                format!("B(n={n}, E={:?})", g.edges()),
                free_partially_commutative(&g, cap).unwrap(),
            ));
        }
    }
    let ab = FiniteLattice::free_semilattice(&["a", "b"]).unwrap();
    let gens: Vec<(&str, usize)> = vec![
        ("a", ab.element("{a}").unwrap()),
        ("b", ab.element("{b}").unwrap()),
    ];
    out.push((
        "KR(P({a,b}))".into(),
        karnofsky_rhodes(&ab, &gens, cap).unwrap().lrb,
    ));
    let l3 = FiniteLattice::brown_quotient(&["a", "b", "c"]).unwrap();
    let gens: Vec<(&str, usize)> = ["a", "b", "c"]
        .iter()
        .map(|l| (*l, l3.element(&format!("{{{l}}}")).unwrap()))
        .collect();
    out.push((
        "KR(L(3))".into(),
        karnofsky_rhodes(&l3, &gens, cap).unwrap().lrb,
    ));
    out.push((
        "Rhodes(3-chain)".into(),
        rhodes_expansion(&FiniteLattice::chain(3).unwrap(), cap)
            .unwrap()
            .lrb,
    ));
    for n in 2..=3 {
        out.push((
            format!("quiver A_{n}"),
            quiver_lrb(&Quiver::linear(n).unwrap(), cap).unwrap().lrb,
        ));
    }
    out.push((
        "three lines".into(),
        real_face_monoid_from_normals(&fig2_normals(), 10).unwrap(),
    ));
    out
}

fn criterion_1() -> Outcome {
    let json = lrb_bin(&["construct", "free", "--letters", "a,b,c"])?;
    let f3 = read_monoid(&json).map_err(err)?;
    ensure!(f3.size() == 16, "F_3 has {} elements", f3.size());
    // Hasse diagram: w covers wx for every letter x outside the content of w.
    let mut expected = BTreeSet::new();
    for x in 0..f3.size() {
        let w = if x == f3.identity() {
            String::new()
        } else {
            f3.name(x).to_string()
        };
        for letter in ['a', 'b', 'c'] {
            if !w.contains(letter) {
                let below = format!("{w}{letter}");
                expected.insert((below, f3.name(x).to_string()));
            }
        }
    }
    let actual: BTreeSet<(String, String)> = f3
        .r_order()
        .hasse()
        .iter()
        .map(|&(lo, hi)| (f3.name(lo).to_string(), f3.name(hi).to_string()))
        .collect();
    ensure!(actual == expected, "Hasse diagram differs: {actual:?}");

    let dir = tempfile::tempdir().map_err(err)?;
    let path = dir.path().join("f3.json");
    std::fs::write(&path, &json).map_err(err)?;
    let dot = lrb_bin(&["analyze", path.to_str().unwrap(), "--quiver"])?;
    let mut labels = BTreeMap::new();
    let mut arrows: BTreeMap<(String, String), usize> = BTreeMap::new();
    for line in dot.lines().map(str::trim) {
        if let Some((v, rest)) = line.split_once(" [label=\"") {
            labels.insert(
                v.to_string(),
                rest.trim_end_matches("\"];")
                    .trim_start_matches("B·")
                    .to_string(),
            );
        } else if let Some((a, b)) = line.trim_end_matches(';').split_once(" -> ") {
            *arrows.entry((a.to_string(), b.to_string())).or_default() += 1;
        }
    }
    ensure!(labels.len() == 8, "{} quiver vertices", labels.len());
    let mut total = 0;
    for (vx, x) in &labels {
        for (vy, y) in &labels {
            let (cx, cy) = (content(x), content(y));
            let m = arrows.get(&(vx.clone(), vy.clone())).copied().unwrap_or(0);
            let expected = if cy.is_subset(&cx) && cx.len() > cy.len() {
                cx.len() - cy.len() - 1
            } else {
                0
            };
            ensure!(m == expected, "{x} -> {y}: {m} arrows, expected {expected}");
            total += m;
        }
    }
    Ok(format!(
        "16 elements, 24 Hasse edges, {total} quiver arrows"
    ))
}

fn criterion_2() -> Outcome {
    let normals = fig2_normals();
    let b = real_face_monoid_from_normals(&normals, 10).map_err(err)?;
    let faces: BTreeSet<&str> = b.names().iter().map(String::as_str).collect();
    ensure!(
        faces == FIG2_SIGNS.iter().copied().collect(),
        "faces {faces:?}"
    );
    let analysis = Analysis::new(&b);
    let lattice = analysis.lattice();
    // Flat spanned by a face: dimension 2 minus the rank of its zero hyperplanes.
    let dim = |x: usize| match b.name(lattice.representative(x)).matches('0').count() {
        0 => 2,
        1 => 1,
        _ => 0,
    };
    let zeros = |x: usize| -> BTreeSet<usize> {
        b.name(lattice.representative(x))
            .char_indices()
            .filter(|c| c.1 == '0')
            .map(|c| c.0)
            .collect()
    };
    for x in 0..lattice.len() {
        for y in 0..lattice.len() {
            let ext = analysis.ext_dims(x, y, Q, 4).map_err(err)?;
            let contained = zeros(x).is_subset(&zeros(y));
            for (n, &d) in ext.iter().enumerate() {
                let expected = usize::from(contained && dim(x) >= dim(y) && dim(x) - dim(y) == n);
                ensure!(d == expected, "ext^{n}({x},{y}) = {d}");
            }
        }
    }
    let q = analysis.quiver();
    for (x, y) in lattice.strict_pairs() {
        ensure!(
            q.multiplicity(x, y) == usize::from(dim(x) == dim(y) + 1),
            "arrow {x} -> {y}"
        );
    }
    let gl = analysis.global_dimension(Q).map_err(err)?;
    ensure!(gl == 2, "gl.dim {gl}");
    Ok(format!("13 faces, {} arrows, gl.dim 2", q.arrow_count()))
}

fn criterion_3() -> Outcome {
    let c4 = free_partially_commutative(&Graph::cycle(4), DEFAULT_SIZE_CAP).map_err(err)?;
    ensure!(c4.size() == 25, "B(C_4) has {} elements", c4.size());
    let a = Analysis::new(&c4);
    let (gq, g2) = (
        a.global_dimension(Q).map_err(err)?,
        a.global_dimension(F2).map_err(err)?,
    );
    let cliq_c4 = clique_complex(&Graph::cycle(4), 1000).map_err(err)?;
    let leray_c4 = leray_number_exhaustive(&cliq_c4, Q, 16).map_err(err)?;
    ensure!(
        gq == 2 && g2 == 2 && leray_c4 == 2,
        "B(C_4): gl.dim {gq}/{g2}, Leray {leray_c4}"
    );

    let p4 = Graph::path(4);
    ensure!(is_chordal(&p4).is_chordal(), "P_4 not chordal");
    let gp = Analysis::new(&free_partially_commutative(&p4, DEFAULT_SIZE_CAP).map_err(err)?)
        .global_dimension(Q)
        .map_err(err)?;
    ensure!(gp <= 1, "B(P_4) gl.dim {gp}");

    let c6bar = Graph::cycle(6).complement();
    let cliq = clique_complex(&c6bar, 1000).map_err(err)?;
    let leray = leray_number_exhaustive(&cliq, Q, 16).map_err(err)?;
    ensure!(
        leray == (6 - 2) / 3 + 1,
        "Leray(Cliq(C6 complement)) = {leray}"
    );
    ensure!(
        !is_chordal(&c6bar).is_chordal(),
        "C6 complement reported chordal"
    );
    let g6 = Analysis::new(&free_partially_commutative(&c6bar, DEFAULT_SIZE_CAP).map_err(err)?)
        .global_dimension(Q)
        .map_err(err)?;
    ensure!(g6 == leray, "B(C6 complement) gl.dim {g6}");
    Ok(format!(
        "B(C_4): 25 elements, gl.dim 2 over Q and F_2 = Leray; B(P_4) gl.dim {gp}; \
         C6 complement is the prism (induced 4-cycle, not chordal): Leray 2 = gl.dim"
    ))
}

fn criterion_4(corpus: &[(String, Lrb)]) -> Outcome {
    let mut pairs = 0;
    let mut truncated = 0;
    for (name, b) in corpus {
        let chain = Analysis::new(b).chain_bound();
        let report = oracle_crosscheck(b, Q, chain.min(3), DEFAULT_BAR_BUDGET).map_err(err)?;
        ensure!(report.passed(), "{name}: {} mismatches", report.mismatches);
        pairs += report.pairs.len();
        truncated += report.truncated;
    }
    Ok(format!(
        "{} monoids, {pairs} pairs, 0 mismatches, {truncated} pairs truncated by the budget",
        corpus.len()
    ))
}

fn criterion_5(corpus: &[(String, Lrb)]) -> Outcome {
    let field = Rationals;
    for (name, b) in corpus {
        let system = idempotents(b, &field).map_err(err)?;
        let lattice = b.support_lattice();
        let n = b.size();
        let mut total = AlgebraElement::zero(&field, n);
        for (x, e) in system.idempotents.iter().enumerate() {
            total = total.add(&field, e);
            for (y, f) in system.idempotents.iter().enumerate() {
                let ef = e.mul(&field, b, f);
                ensure!(
                    if x == y { ef == *e } else { ef.is_zero(&field) },
                    "{name}: e_{x} e_{y}"
                );
            }
            for c in 0..n {
                if !lattice.leq(x, lattice.sigma(c)) {
                    ensure!(
                        e.left_mul(&field, b, c).is_zero(&field),
                        "{name}: {} e_{x} != 0",
                        b.name(c)
                    );
                }
            }
        }
        ensure!(
            total == AlgebraElement::basis(&field, n, b.identity()),
            "{name}: idempotents do not sum to 1"
        );
        ensure!(
            idempotent_basis_check(b, &field, &system).passed(),
            "{name}: basis check"
        );
        let schutz = schutzenberger_check(b, &field, &system);
        ensure!(schutz.passed(), "{name}: Schutzenberger check");
        let fibres: usize = (0..lattice.len()).map(|x| lattice.fibre(x).len()).sum();
        ensure!(
            fibres == n && schutz.fibre_sizes.iter().sum::<usize>() == n,
            "{name}: fibre sizes"
        );
    }
    Ok(format!("{} monoids", corpus.len()))
}

fn criterion_6(corpus: &[(String, Lrb)]) -> Outcome {
    let (mut leray_checked, mut hereditary, mut geometric) = (0, 0, 0);
    for (name, b) in corpus {
        let a = Analysis::new(b);
        let bounds = a.bounds_report(Q).map_err(err)?;
        ensure!(bounds.chain_bound_holds, "{name}: chain bound");
        if b.size() <= 16 {
            ensure!(
                bounds.leray_bound_holds == Some(true),
                "{name}: Leray bound {:?}",
                bounds.leray_bound
            );
            leray_checked += 1;
        }
        if b.is_right_hereditary() {
            ensure!(
                bounds.global_dimension <= 1,
                "{name}: right hereditary with gl.dim {}",
                bounds.global_dimension
            );
            let rh = a.right_hereditary_quiver().map_err(err)?;
            ensure!(rh == a.quiver(), "{name}: right hereditary quiver differs");
            hereditary += 1;
        }
        if b.is_geometric() {
            let report = a.geometric_commutation_check(Q).map_err(err)?;
            ensure!(
                report.agree,
                "{name}: {:?} vs {:?}",
                report.delta_betti,
                report.clique_betti
            );
            geometric += 1;
        }
    }
    Ok(format!(
        "chain bound on {}, Leray bound on {leray_checked}, {hereditary} right hereditary, {geometric} geometric",
        corpus.len()
    ))
}

fn criterion_7() -> Outcome {
    let letters = ["a", "b", "c"];
    let lattice = FiniteLattice::free_semilattice(&letters).map_err(err)?;
    let gens: Vec<(&str, usize)> = letters
        .iter()
        .map(|l| (*l, lattice.element(&format!("{{{l}}}")).unwrap()))
        .collect();
    let kr = karnofsky_rhodes(&lattice, &gens, DEFAULT_SIZE_CAP)
        .map_err(err)?
        .lrb;
    let f3 = free_lrb(&letters, DEFAULT_SIZE_CAP).map_err(err)?;
    ensure!(kr.size() == f3.size(), "KR has {} elements", kr.size());
    // Labelled isomorphism: matching names multiply alike.
    let to_f3: Vec<usize> = (0..kr.size())
        .map(|x| f3.element(kr.name(x)).ok_or(kr.name(x).to_string()))
        .collect::<Result<_, _>>()?;
    for x in 0..kr.size() {
        for y in 0..kr.size() {
            ensure!(
                to_f3[kr.mul(x, y)] == f3.mul(to_f3[x], to_f3[y]),
                "{} * {}",
                kr.name(x),
                kr.name(y)
            );
        }
    }
    let a2 = quiver_lrb(&Quiver::linear(2).map_err(err)?, DEFAULT_SIZE_CAP).map_err(err)?;
    let check = quiver_algebra_check(&a2, Q);
    ensure!(
        a2.lrb.size() == 3 && a2.paths.len() == 3,
        "A_2 band has {} elements",
        a2.lrb.size()
    );
    ensure!(check.rank == 3 && check.multiplicative, "{check:?}");
    Ok("KR(free semilattice on a,b,c) = F_3 with labels; A_2 band has 3 elements, ell-images independent".into())
}

fn random_complex(rng: &mut ChaCha8Rng) -> SimplicialComplex {
    let n = rng.gen_range(1..=7);
    let facets = (0..rng.gen_range(1..=6))
        .map(|_| {
            let mut f: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.45)).collect();
            if f.is_empty() {
                f.push(rng.gen_range(0..n));
            }
            f
        })
        .collect();
    SimplicialComplex::with_indices(n, facets)
}

fn boundaries_compose_to_zero(k: &SimplicialComplex) -> bool {
    (1..=k.dimension().max(0) as usize).all(|d| {
        k.boundary_matrix(d)
            .compose(&k.boundary_matrix(d - 1))
            .is_zero()
    })
}

fn criterion_8(corpus: &[(String, Lrb)]) -> Outcome {
    let mut complexes = 0;
    for (name, b) in corpus {
        let a = Analysis::new(b);
        for (x, y) in a.lattice().strict_pairs() {
            ensure!(
                boundaries_compose_to_zero(a.delta(x, y).map_err(err)?),
                "{name}: Delta({x},{y})"
            );
            complexes += 1;
        }
        let whole = order_complex(&b.r_order(), b.names().to_vec());
        ensure!(boundaries_compose_to_zero(&whole), "{name}: order complex");
        complexes += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        let k = random_complex(&mut rng);
        ensure!(
            boundaries_compose_to_zero(&k),
            "random complex {:?}",
            k.facets()
        );
        let f = k.f_vector();
        let from_faces = -1
            + f.iter()
                .enumerate()
                .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
                .sum::<i64>();
        ensure!(
            k.reduced_betti(Q).euler_characteristic() == from_faces,
            "Euler characteristic of {:?}",
            k.facets()
        );
        complexes += 1;
    }
    let mut graphs = 0;
    for n in 1..=6 {
        for g in graphs_up_to_isomorphism(n) {
            let cliq = clique_complex(&g, 10_000).map_err(err)?;
            let leray = leray_number_exhaustive(&cliq, Q, 16).map_err(err)?;
            ensure!(
                (leray <= 1) == is_chordal(&g).is_chordal(),
                "graph {:?}: Leray {leray}",
                g.edges()
            );
            ensure!(
                leray_number(&cliq, Q, 16).map_err(err)? == leray,
                "fast Leray on {:?}",
                g.edges()
            );
            graphs += 1;
        }
    }
    Ok(format!(
        "{complexes} complexes, {graphs} graphs up to isomorphism"
    ))
}

fn main() {
    let started = Instant::now();
    let corpus = corpus();
    let criteria: Vec<Criterion> = vec![
        ("free band figures", Box::new(criterion_1)),
        ("hyperplane sphere law", Box::new(criterion_2)),
        ("free partially commutative bands", Box::new(criterion_3)),
        ("oracle equivalence", Box::new(|| criterion_4(&corpus))),
        ("idempotent suite", Box::new(|| criterion_5(&corpus))),
        ("structural bounds", Box::new(|| criterion_6(&corpus))),
        ("construction identities", Box::new(criterion_7)),
        ("topology self-checks", Box::new(|| criterion_8(&corpus))),
    ];
    let mut failures = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {title} ({detail}) [{secs:.1}s]", i + 1),
            Err(reason) => {
                failures += 1;
                println!("criterion {}: FAIL  {title}: {reason} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} passed in {:.1}s",
        criteria.len() - failures,
        criteria.len(),
        started.elapsed().as_secs_f64()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
