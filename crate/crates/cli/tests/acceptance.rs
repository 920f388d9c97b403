//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.
//!
//! Tolerances: every criterion is exact rational equality except the
//! Monte-Carlo check, which requires |estimate - exact| <= 3 stderr with
//! 100000 samples and allows one rerun with a fresh seed.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::Instant;

use multifan_core::algebra::{
    algebras_built, sr_quotient_dims, verify_structure, DualityAlgebra, StructureCase,
};
use multifan_core::exactmath::{q, qr, qvec, to_f64, HomogeneousForm, QMatrix, QVector, SkewForm};
use multifan_core::fixtures::{self, random_complete_fan};
use multifan_core::multifan::FlipResult;
use multifan_core::polytope::{minkowski_operator, polarization_residual, MultiPolytope};
use multifan_core::recognize::{is_volume_polynomial, reconstruct};
use multifan_core::simplicial::{Chain, SimplicialComplex};
use multifan_core::volume::{recover_lambda, volume_poly_index, volume_poly_lawrence};
use multifan_core::{seeded_rng, DetRng, Error, MultiFan};
use rand::Rng;

type Outcome = Result<String, String>;

fn check(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn e(err: Error) -> String {
    err.to_string()
}

fn ones(m: usize) -> QVector {
    vec![q(1); m]
}

fn sum_of(idx: &[usize], m: usize) -> HomogeneousForm {
    let mut c = vec![q(0); m];
    for &i in idx {
        c[i] = q(1);
    }
    HomogeneousForm::linear(&c)
}

fn dims(f: &MultiFan, rng: &mut DetRng) -> Result<Vec<usize>, String> {
    let v = volume_poly_index(f, rng).map_err(e)?.form;
    Ok(DualityAlgebra::build(&v).map_err(e)?.dims())
}

fn both_routes(f: &MultiFan, rng: &mut DetRng) -> Result<HomogeneousForm, String> {
    let a = volume_poly_index(f, rng).map_err(e)?.form;
    let v = f.generic_vector(rng).map_err(e)?;
    let b = volume_poly_lawrence(f, &v).map_err(e)?.form;
    check(a == b, "index and Lawrence routes differ")?;
    Ok(a)
}

fn criterion_1() -> Outcome {
    let mut rng = seeded_rng(1);
    let v = both_routes(&fixtures::cp2(), &mut rng)?;
    let expected = sum_of(&[0, 1, 2], 3).pow(2).scale(&qr(1, 2));
    check(v == expected, "CP2 volume is not (c1+c2+c3)^2/2")?;
    Ok("V = 1/2 (c1+c2+c3)^2 by both routes".into())
}

fn criterion_2() -> Outcome {
    let mut rng = seeded_rng(2);
    let sq = both_routes(&fixtures::square(), &mut rng)?;
    check(
        sq == sum_of(&[0, 2], 4).mul(&sum_of(&[1, 3], 4)),
        "square volume",
    )?;
    let oct = both_routes(&fixtures::octahedron(), &mut rng)?;
    let expected = sum_of(&[0, 3], 6)
        .mul(&sum_of(&[1, 4], 6))
        .mul(&sum_of(&[2, 5], 6));
    check(oct == expected, "octahedron volume")?;
    for n in 2..=4 {
        let f = fixtures::cross_polytope(n);
        let v = f.generic_vector(&mut rng).map_err(e)?;
        let l = volume_poly_lawrence(&f, &v).map_err(e)?.form;
        check(
            polarization_residual(&l, n).is_zero(),
            format!("polarization residual nonzero for n={n}"),
        )?;
    }
    Ok("square and octahedron exact; polarization residual 0 for n=2,3,4".into())
}

fn random_fans() -> Vec<MultiFan> {
    let mut rng = seeded_rng(3);
    (0..50)
        .map(|k| {
            let n = 2 + k % 2;
            let m = rng.gen_range(n + 1..=8);
            let terms = rng.gen_range(1..=4);
            random_complete_fan(&mut rng, n, m, 5, terms)
        })
        .collect()
}

fn criterion_3(fans: &[MultiFan]) -> Outcome {
    let mut rng = seeded_rng(33);
    for (k, f) in fans.iter().enumerate() {
        let a = volume_poly_index(f, &mut rng).map_err(e)?.form;
        let b = volume_poly_index(f, &mut rng).map_err(e)?.form;
        let v1 = f.generic_vector(&mut rng).map_err(e)?;
        let v2 = f
            .generic_vector_avoiding(&mut rng, &[v1.clone()])
            .map_err(e)?;
        let l1 = volume_poly_lawrence(f, &v1).map_err(e)?.form;
        let l2 = volume_poly_lawrence(f, &v2).map_err(e)?.form;
        check(
            a == b && a == l1 && a == l2,
            format!("fan {k}: routes disagree"),
        )?;
    }
    Ok(format!(
        "{} random fans, index = Lawrence under two generic vectors",
        fans.len()
    ))
}

fn criterion_4() -> Outcome {
    let p = MultiPolytope::new(fixtures::star(), ones(5)).map_err(e)?;
    let mut rng = seeded_rng(4);
    let v = p.fan.generic_vector(&mut rng).map_err(e)?;
    let dh = p.dh_evaluator(&v).map_err(e)?;
    let at = |u: &QVector| dh.eval(u).map(|d| d.value).map_err(e);
    check(at(&qvec(&[0, 0]))? == q(2), "DH(0,0) != 2")?;
    let tips = p.vertices().map_err(e)?;
    check(tips.len() == 5, "expected five vertices")?;
    for (s, tip) in &tips {
        let w: QVector = tip.iter().map(|x| x * qr(99, 100)).collect();
        check(
            at(&w)? == q(1),
            format!("DH != 1 near the tip of facet {s:?}"),
        )?;
    }
    check(at(&qvec(&[100, 37]))? == q(0), "DH far away != 0")?;
    let mut tested = 0;
    while tested < 100 {
        let u: QVector = (0..2).map(|_| qr(rng.gen_range(-40..=40), 7)).collect();
        if p.hyperplane_through(&u).is_some() {
            continue;
        }
        let d = at(&u)?;
        let w = p.winding_number(&u).map_err(e)?;
        check(d == w, format!("DH {d} != winding {w} at {u:?}"))?;
        tested += 1;
    }
    Ok("2 at origin, 1 in each of 5 tips, 0 far away, winding agrees at 100 points".into())
}

fn criterion_5() -> Outcome {
    let mut notes = Vec::new();
    for (name, f) in [
        ("square", fixtures::square()),
        ("cp2", fixtures::cp2()),
        ("star", fixtures::star()),
    ] {
        let m = f.m();
        let p = MultiPolytope::new(f, ones(m)).map_err(e)?;
        let exact = to_f64(
            &volume_poly_index(&p.fan, &mut seeded_rng(5))
                .map_err(e)?
                .form
                .evaluate(&p.c),
        );
        let mut passed = false;
        for attempt in 0..2u64 {
            let (est, se) = p
                .mc_volume(100_000, &mut seeded_rng(50 + attempt))
                .map_err(e)?;
            if (est - exact).abs() <= 3.0 * se {
                notes.push(format!("{name} {est:.4}+-{se:.4} vs {exact}"));
                passed = true;
                break;
            }
        }
        check(
            passed,
            format!("{name}: Monte-Carlo outside 3 stderr twice"),
        )?;
    }
    Ok(notes.join("; "))
}

fn structure_dims(
    f: &MultiFan,
    rng: &mut DetRng,
) -> Result<(Vec<usize>, Vec<i64>, Vec<usize>), String> {
    let r = verify_structure(f, rng).map_err(e)?;
    check(
        r.verified(),
        format!("structure checks failed: {:?}", r.checks),
    )?;
    Ok((r.dm, r.profile.h_vector, r.sr_dims))
}

fn criterion_6() -> Outcome {
    let mut rng = seeded_rng(6);
    let (dm, h, sr) = structure_dims(&fixtures::octahedron(), &mut rng)?;
    check(
        dm == [1, 3, 3, 1] && h == [1, 3, 3, 1] && sr == [1, 3, 3, 1],
        "octahedron",
    )?;
    let tri = SimplicialComplex::simplex_boundary(3, &[0, 1, 2]).map_err(e)?;
    for k in 0..5 {
        let f = if k == 0 {
            fixtures::cp2()
        } else {
            fixtures::fundamental_fan(&tri, fixtures::random_lambda_for(&mut rng, &tri, 2, 5))
                .map_err(e)?
        };
        let (dm, h, sr) = structure_dims(&f, &mut rng)?;
        check(
            dm == [1, 1, 1] && h == [1, 1, 1] && sr == [1, 1, 1],
            "triangle boundary",
        )?;
    }
    let ico = fixtures::icosahedron_complex();
    check(
        ico.f_vector_augmented() == [1, 12, 30, 20],
        "icosahedron f-vector",
    )?;
    for _ in 0..20 {
        let lambda = fixtures::random_lambda_for(&mut rng, &ico, 3, 5);
        let f = fixtures::fundamental_fan(&ico, lambda).map_err(e)?;
        let (dm, h, sr) = structure_dims(&f, &mut rng)?;
        check(
            dm == [1, 9, 9, 1] && h == [1, 9, 9, 1] && sr == [1, 9, 9, 1],
            format!("icosahedron gave {dm:?}"),
        )?;
    }
    Ok("octahedron (1,3,3,1); triangle (1,1,1) x5; icosahedron (1,9,9,1) x20".into())
}

fn criterion_7() -> Outcome {
    let f = fixtures::torus();
    let r = verify_structure(&f, &mut seeded_rng(7)).map_err(e)?;
    check(
        r.case == StructureCase::Manifold,
        "torus not classified as a manifold",
    )?;
    check(r.dm == [1, 4, 4, 1], "dm")?;
    check(r.profile.h_double_prime == [1, 4, 4, 1], "h''")?;
    check(r.profile.h_prime == [1, 4, 10, 1], "h'")?;
    check(r.sr_dims == [1, 4, 10, 1], "sr dims")?;
    let defects: Vec<i64> = r.socle_defects.iter().map(|d| d.0).collect();
    let expected: Vec<i64> = r.socle_defects.iter().map(|d| d.1).collect();
    check(
        defects == [0, 0, 6, 0] && expected == [0, 0, 6, 0],
        "socle defects",
    )?;
    // second system of parameters for the SR side
    let lambda = fixtures::random_lambda_for(&mut seeded_rng(70), &fixtures::torus_complex(), 3, 7);
    let sr2 = sr_quotient_dims(&fixtures::torus_complex(), &lambda).map_err(e)?;
    check(sr2 == [1, 4, 10, 1], "sr dims, second parameters")?;
    Ok("dm = h'' = (1,4,4,1), sr = h' = (1,4,10,1), defects (0,0,6,0)".into())
}

/// Basis of the closed cochains of degree 1 on a 2-dimensional complex.
fn closed_one_cochains(k: &SimplicialComplex) -> Result<Vec<Chain>, String> {
    let edges = k.faces(2);
    let triangles = k.faces(3);
    let cols: Vec<QVector> = edges
        .iter()
        .map(|s| {
            let d = Chain::from_terms(1, [(s.clone(), q(1))])
                .coboundary(k)
                .map_err(e)?;
            Ok(triangles.iter().map(|t| d.coef(t)).collect())
        })
        .collect::<Result<_, String>>()?;
    let mat = QMatrix::from_columns(&cols, triangles.len());
    Ok(mat
        .kernel_basis()
        .into_iter()
        .map(|x| Chain::from_terms(1, edges.iter().cloned().zip(x)))
        .collect())
}

fn criterion_9() -> Outcome {
    let mut rng = seeded_rng(9);
    let mut count = 0;
    let list = [
        ("cp2", fixtures::cp2()),
        ("square", fixtures::square()),
        ("octahedron", fixtures::octahedron()),
        ("star", fixtures::star()),
        ("torus", fixtures::torus()),
    ];
    for (name, f) in &list {
        let vol = volume_poly_index(f, &mut rng).map_err(e)?.form;
        let c: QVector = (0..f.m()).map(|_| q(rng.gen_range(1..=5))).collect();
        let p = MultiPolytope::new(f.clone(), c).map_err(e)?;
        check(
            p.minkowski_facet_residual(&vol).iter().all(|x| *x == q(0)),
            format!("{name}: facet residual"),
        )?;
        let k = f.complex();
        for degree in 0..f.n() as isize {
            let mut tests: Vec<Chain> = Vec::new();
            for _ in 0..3 {
                // exact: coboundary of a random cochain one degree down
                let b = Chain::from_terms(
                    degree - 1,
                    k.faces(degree as usize)
                        .into_iter()
                        .map(|s| (s, q(rng.gen_range(-3..=3)))),
                );
                tests.push(b.coboundary(&k).map_err(e)?);
            }
            if *name == "torus" && degree == 1 {
                let basis = closed_one_cochains(&k)?;
                check(
                    basis.len() == 8,
                    format!("torus: {} closed 1-cochains, expected 8", basis.len()),
                )?;
                tests.extend(basis);
            }
            for a in tests.into_iter().filter(|a| !a.is_zero()) {
                let vecs: Vec<QVector> = (0..=degree)
                    .map(|_| (0..f.n()).map(|_| q(rng.gen_range(-4..=4))).collect())
                    .collect();
                let mu = SkewForm::wedge(f.n(), &vecs).map_err(e)?;
                let op = minkowski_operator(f, &a, &mu).map_err(e)?;
                check(
                    op.apply(&vol).is_zero(),
                    format!("{name}: cocycle residual nonzero in degree {degree}"),
                )?;
                check(
                    p.minkowski_cocycle_residual(&vol, &a, &mu).map_err(e)? == q(0),
                    "residual at c",
                )?;
                count += 1;
            }
        }
    }
    Ok(format!(
        "facet residual 0 on 5 fixtures; {count} cocycle checks exactly 0, torus H^1 included"
    ))
}

fn expected_change(n: usize, p: usize, qq: usize) -> Vec<i64> {
    (0..=n)
        .map(|k| i64::from(k < qq) - i64::from(k < p))
        .collect()
}

fn check_flip(f: &MultiFan, r: &FlipResult, rng: &mut DetRng) -> Result<(), String> {
    check(r.fan.is_complete(), "flip result not complete")?;
    let before = dims(f, rng)?;
    let after = dims(&r.fan, rng)?;
    let change: Vec<i64> = before
        .iter()
        .zip(&after)
        .map(|(a, b)| *b as i64 - *a as i64)
        .collect();
    check(
        change == expected_change(f.n(), r.p, r.q),
        format!("({},{}) flip: dm {before:?} -> {after:?}", r.p, r.q),
    )
}

fn criterion_10() -> Outcome {
    let mut rng = seeded_rng(10);
    let mut kinds = BTreeMap::<(usize, usize), usize>::new();
    for f in [
        fixtures::cp2(),
        fixtures::square(),
        fixtures::octahedron(),
        fixtures::star(),
        fixtures::torus(),
    ] {
        for facet in f.facets().into_iter().take(3) {
            // a ray inside the cone of the facet
            let mut x = vec![q(0); f.n()];
            for &i in &facet {
                let w = q(rng.gen_range(1..=3));
                for (a, b) in x.iter_mut().zip(&f.lambda()[i]) {
                    *a += &w * b;
                }
            }
            let r = f.flip_stellar(&facet, x).map_err(e)?;
            check_flip(&f, &r, &mut rng)?;
            *kinds.entry((r.p, r.q)).or_default() += 1;
            let back = r.fan.flip_unstellar(f.m()).map_err(e)?;
            check_flip(&r.fan, &back, &mut rng)?;
            *kinds.entry((back.p, back.q)).or_default() += 1;
        }
    }
    // (2,2) flips need n = 3: octahedron combinatorics with generic vectors.
    // Facets {0,1,2} and {1,2,3} share the edge {1,2}; {0,3} is not an edge.
    let oct = fixtures::octahedron_complex();
    let mut done = 0;
    while done < 5 {
        let lambda = fixtures::random_lambda_for(&mut rng, &oct, 3, 5);
        let f = fixtures::fundamental_fan(&oct, lambda).map_err(e)?;
        match f.flip(&[0, 1, 2, 3]) {
            Ok(r) => {
                check(
                    (r.p, r.q) == (2, 2),
                    format!("expected a (2,2) flip, got ({},{})", r.p, r.q),
                )?;
                check_flip(&f, &r, &mut rng)?;
                *kinds.entry((2, 2)).or_default() += 1;
                done += 1;
            }
            Err(Error::NotGeneric { .. }) | Err(Error::StarCondition { .. }) => continue,
            Err(err) => return Err(e(err)),
        }
    }
    let torus_facet = fixtures::torus().facets()[0].clone();
    let sums = [
        (fixtures::cp2(), fixtures::cp2(), vec![0, 1]),
        (fixtures::square(), fixtures::cp2(), vec![0, 1]),
        (
            fixtures::octahedron(),
            fixtures::octahedron(),
            vec![0, 1, 2],
        ),
        (fixtures::torus(), fixtures::torus(), torus_facet),
    ];
    for (a, b, s) in &sums {
        let sum = a.connected_sum(b, s).map_err(e)?;
        check(sum.is_complete(), "connected sum not complete")?;
        let (da, db, ds) = (
            dims(a, &mut rng)?,
            dims(b, &mut rng)?,
            dims(&sum, &mut rng)?,
        );
        let n = a.n();
        let expected: Vec<usize> = (0..=n)
            .map(|k| da[k] + db[k] - usize::from(k == 0 || k == n))
            .collect();
        check(
            ds == expected,
            format!("connected sum dm {ds:?}, expected {expected:?}"),
        )?;
    }
    Ok(format!(
        "flip types {kinds:?}; {} connected sums",
        sums.len()
    ))
}

fn criterion_11(fans: &[MultiFan]) -> Outcome {
    let mut rng = seeded_rng(11);
    for (k, f) in fans.iter().enumerate() {
        let v = volume_poly_index(f, &mut rng).map_err(e)?.form;
        let verdict = is_volume_polynomial(&v).map_err(e)?;
        check(
            verdict.is_volume_polynomial,
            format!("fan {k} rejected: {}", verdict.reason),
        )?;
        let r = reconstruct(&v, &mut rng).map_err(e)?;
        let w = volume_poly_index(&r.fan, &mut rng).map_err(e)?.form;
        check(
            w == v,
            format!("fan {k}: reconstruction has a different volume"),
        )?;
    }
    let neg = is_volume_polynomial(&HomogeneousForm::monomial(vec![1, 1], q(1))).map_err(e)?;
    check(
        !neg.is_volume_polynomial && neg.ann_dim == 0,
        "c1 c2 not rejected by dim Ann^2",
    )?;
    Ok(format!(
        "{} fans recognized and rebuilt; c1 c2 rejected ({})",
        fans.len(),
        neg.reason
    ))
}

fn criterion_12() -> Outcome {
    let mut rng = seeded_rng(12);
    for f in [fixtures::cp2(), fixtures::square()] {
        let v = volume_poly_index(&f, &mut rng).map_err(e)?.form;
        let seed = f.facets()[0].clone();
        let vecs: Vec<QVector> = seed.iter().map(|&i| f.lambda()[i].clone()).collect();
        let g = recover_lambda(&v, &seed, &vecs, &mut rng).map_err(e)?;
        check(
            volume_poly_index(&g, &mut rng).map_err(e)?.form == v,
            "recovered fan has a different volume",
        )?;
        check(g.lambda() == f.lambda(), "recovered vectors differ")?;
    }
    Ok("CP2 and square recovered exactly".into())
}

fn criterion_13() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_multifan");
    let runs: &[&[&str]] = &[
        &["volume", "--fixture", "star"],
        &["structure", "--fixture", "torus"],
        &["dh", "--fixture", "star", "--point", "1/3,1/5"],
        &["plot-dh", "--fixture", "star"],
        &["plot-dh", "--fixture", "cp2", "--c", "1,2,3"],
        &["mcvol", "--fixture", "cp2", "--samples", "2000"],
        &[
            "experiment-rigidity",
            "--fixture",
            "octahedron",
            "--samples",
            "3",
        ],
        &["faces", "--fixture", "octahedron", "--face", "1,2"],
    ];
    for args in runs {
        let once = || {
            Command::new(bin)
                .args(["--seed", "13"])
                .args(*args)
                .output()
                .map_err(|x| x.to_string())
        };
        let (a, b) = (once()?, once()?);
        check(a.status.success(), format!("{args:?} failed"))?;
        check(
            a.stdout == b.stdout && a.stderr == b.stderr,
            format!("{args:?} not deterministic"),
        )?;
    }
    Ok(format!(
        "{} commands byte-identical across runs, SVG included",
        runs.len()
    ))
}

fn main() {
    let start = Instant::now();
    let fans = random_fans();
    let mut results: Vec<(usize, Outcome)> = Vec::new();
    let mut run = |k: usize, f: &dyn Fn() -> Outcome| {
        let t = Instant::now();
        let r = f();
        eprintln!("criterion {k} took {:.1}s", t.elapsed().as_secs_f64());
        results.push((k, r));
    };
    run(1, &criterion_1);
    run(2, &criterion_2);
    run(3, &|| criterion_3(&fans));
    run(4, &criterion_4);
    run(5, &criterion_5);
    run(6, &criterion_6);
    run(7, &criterion_7);
    run(9, &criterion_9);
    run(10, &criterion_10);
    run(11, &|| criterion_11(&fans));
    run(12, &criterion_12);
    run(13, &criterion_13);
    // every build asserts dm symmetric, d0 = dn = 1 and nondegenerate pairings
    let built = algebras_built();
    results.push((
        8,
        if built > 0 {
            Ok(format!(
                "{built} algebras built, each asserted symmetric at construction"
            ))
        } else {
            Err("no algebras were built".into())
        },
    ));
    results.sort_by_key(|r| r.0);
    let mut failed = 0;
    for (k, r) in &results {
        match r {
            Ok(msg) => println!("criterion {k:>2}: PASS  {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {k:>2}: FAIL  {msg}");
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1}s",
        results.len() - failed,
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
