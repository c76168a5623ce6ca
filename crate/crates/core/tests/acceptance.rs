//! End-to-end acceptance checks. Runs without the libtest harness so every
//! criterion prints exactly one PASS/FAIL line, in order.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vnspace::analysis::{covering_radius, d_points, euclidean_comparison, voronoi_region, voronoi_vertices};
use vnspace::arrangement::{adapted_set, missing_wall, Strategy};
use vnspace::exact::{int, rat, to_f64};
use vnspace::job::{self, JobSpec, LatticeSpec, NormSpec};
use vnspace::lattice::{an_basis, dn_basis, pullback_norm, LatticeBasis};
use vnspace::lattice_enum::{closest_lattice_points, d_min};
use vnspace::norm::PolyhedralNorm;
use vnspace::polyhedra::{facets, volume, HPolyhedron};
use vnspace::symmetry::{point_group, AffineSymmetry};
use vnspace::vn::{decompose, verify, Decomposition};
use vnspace::{IntMatrix, QVector, Rational};

const SEED: u64 = 2024;

struct Config {
    name: String,
    lattice: char,
    basis: LatticeBasis,
    norm: PolyhedralNorm,
    d: Decomposition,
    elapsed: Duration,
}

fn configs() -> Vec<Config> {
    let mut out = Vec::new();
    let mut push = |name: String, lattice: char, basis: LatticeBasis, norm: PolyhedralNorm| {
        let t = Instant::now();
        let d = decompose(&norm, Strategy::Auto, SEED).unwrap_or_else(|e| panic!("{name}: {e}"));
        out.push(Config {
            name,
            lattice,
            basis,
            norm,
            d,
            elapsed: t.elapsed(),
        });
    };
    for n in 1..=3 {
        push(
            format!("Z{n}/L1"),
            'Z',
            LatticeBasis::standard(n),
            PolyhedralNorm::l1(n),
        );
        push(
            format!("Z{n}/Linf"),
            'Z',
            LatticeBasis::standard(n),
            PolyhedralNorm::l_infinity(n),
        );
    }
    for (kind, n) in [('A', 2), ('D', 2), ('A', 3), ('D', 3)] {
        let basis = if kind == 'A' { an_basis(n) } else { dn_basis(n) }.unwrap();
        let m = basis.ambient_dim();
        for (label, ambient) in [("L1", PolyhedralNorm::l1(m)), ("Linf", PolyhedralNorm::l_infinity(m))] {
            let norm = pullback_norm(&ambient, &basis).unwrap();
            push(format!("{kind}{n}/{label}"), kind, basis.clone(), norm);
        }
    }
    out
}

fn find<'a>(cs: &'a [Config], name: &str) -> &'a Config {
    cs.iter().find(|c| c.name == name).expect(name)
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corners(n: usize) -> BTreeSet<QVector> {
    (0..1u32 << n)
        .map(|mask| {
            QVector(
                (0..n)
                    .map(|i| if mask >> i & 1 == 1 { rat(1, 2) } else { rat(-1, 2) })
                    .collect(),
            )
        })
        .collect()
}

fn random_rational_point(rng: &mut impl Rng, n: usize, range: i64) -> QVector {
    QVector(
        (0..n)
            .map(|_| {
                let q = rng.gen_range(1..=12);
                Rational::new(rng.gen_range(-range * q..=range * q).into(), q.into())
            })
            .collect(),
    )
}

/// Float evaluation of the norm straight from its forms.
fn float_norm(forms: &[Vec<f64>], y: &[f64]) -> f64 {
    forms
        .iter()
        .map(|f| f.iter().zip(y).map(|(a, b)| a * b).sum::<f64>())
        .fold(f64::NEG_INFINITY, f64::max)
}

fn float_forms(norm: &PolyhedralNorm) -> Vec<Vec<f64>> {
    norm.forms()
        .iter()
        .map(|f| f.coeffs().iter().map(to_f64).collect())
        .collect()
}

/// For a symmetric norm, `|y_i| <= bound[i] * N(y)`: invert `n` independent forms.
fn coordinate_bounds(norm: &PolyhedralNorm) -> Vec<f64> {
    let n = norm.dim();
    let forms = float_forms(norm);
    let mut chosen: Vec<Vec<f64>> = Vec::new();
    for f in &forms {
        let mut rows = chosen.clone();
        rows.push(f.clone());
        if float_rank(&rows) == rows.len() {
            chosen = rows;
        }
        if chosen.len() == n {
            break;
        }
    }
    let inv = float_inverse(&chosen);
    inv.iter().map(|row| row.iter().map(|x| x.abs()).sum()).collect()
}

fn float_rank(rows: &[Vec<f64>]) -> usize {
    let mut m = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())) else {
            break;
        };
        if m[p][c].abs() < 1e-9 {
            continue;
        }
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank {
                let k = m[r][c] / m[rank][c];
                let pivot = m[rank].clone();
                for (x, t) in m[r].iter_mut().zip(&pivot) {
                    *x -= k * t;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn float_inverse(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| m[x][c].abs().total_cmp(&m[y][c].abs())).unwrap();
        m.swap(c, p);
        let d = m[c][c];
        for v in m[c].iter_mut() {
            *v /= d;
        }
        for r in 0..n {
            if r != c {
                let k = m[r][c];
                let pivot = m[c].clone();
                for (x, t) in m[r].iter_mut().zip(&pivot) {
                    *x -= k * t;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Exhaustive exact search over a box provably containing every closest lattice point.
fn brute_closest(norm: &PolyhedralNorm, x: &QVector) -> (Rational, Vec<QVector>) {
    assert!(norm.is_symmetric(), "coordinate bounds need a symmetric norm");
    let n = norm.dim();
    let r0 = norm.distance(x, &x.round());
    let bounds = coordinate_bounds(norm);
    let radius: Vec<i64> = bounds.iter().map(|b| (b * to_f64(&r0)).ceil() as i64 + 1).collect();
    let base: Vec<i64> = x.0.iter().map(|c| c.floor().to_integer().to_i64().unwrap()).collect();
    let mut best: Option<Rational> = None;
    let mut points = Vec::new();
    let mut idx: Vec<i64> = radius.iter().map(|r| -r).collect();
    loop {
        let v = QVector::from_ints(&(0..n).map(|i| base[i] + idx[i]).collect::<Vec<_>>());
        let dv = norm.distance(x, &v);
        match &best {
            Some(b) if dv > *b => {}
            Some(b) if dv == *b => points.push(v),
            _ => {
                best = Some(dv);
                points = vec![v];
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                points.sort();
                return (best.unwrap(), points);
            }
            idx[i] += 1;
            if idx[i] <= radius[i] + 1 {
                break;
            }
            idx[i] = -radius[i];
            i += 1;
        }
    }
}

/// Point near the isobarycenter pushed by positive weights: strictly interior.
fn interior_point(rng: &mut impl Rng, vertices: &[QVector]) -> QVector {
    let w: Vec<i64> = vertices.iter().map(|_| rng.gen_range(1..=9)).collect();
    let total: i64 = w.iter().sum();
    let mut x = QVector::zeros(vertices[0].dim());
    for (v, k) in vertices.iter().zip(&w) {
        x = &x + &v.scale(&int(*k));
    }
    x.scale(&rat(1, total))
}

fn criterion_1(cs: &[Config]) -> Result<String, String> {
    let mut worst = Duration::ZERO;
    for c in cs.iter().filter(|c| c.lattice == 'Z') {
        let t = Instant::now();
        let n = c.norm.dim();
        let region = voronoi_region(&c.d, &QVector::zeros(n), true);
        let hull = region.hull().map_err(|e| e.to_string())?;
        let vertices: BTreeSet<QVector> = hull.vertices().iter().cloned().collect();
        check(vertices == corners(n), || {
            format!("{}: V_<=(0) vertices {:?}", c.name, vertices)
        })?;
        check(region.is_convex(&c.d).map_err(|e| e.to_string())?, || {
            format!("{}: union is not the cube", c.name)
        })?;
        let took = c.elapsed + t.elapsed();
        check(took < Duration::from_secs(10), || format!("{}: {took:?}", c.name))?;
        worst = worst.max(took);
    }
    Ok(format!("6 configurations, slowest {worst:.2?}"))
}

fn criterion_2(cs: &[Config]) -> Result<String, String> {
    for c in cs {
        check(c.d.volume_sum() == Rational::one(), || {
            format!("{}: sum {}", c.name, c.d.volume_sum())
        })?;
    }
    Ok(format!("{} decompositions sum exactly to 1", cs.len()))
}

fn criterion_3(cs: &[Config]) -> Result<String, String> {
    for (name, vertices, size, tvol) in [
        ("Z2/Linf", 3, 4, rat(1, 4)),
        ("Z2/L1", 4, 4, rat(1, 4)),
        ("Z3/L1", 8, 8, rat(1, 8)),
    ] {
        let d = &find(cs, name).d;
        check(d.orbits.len() == 1, || format!("{name}: {} orbits", d.orbits.len()))?;
        let o = &d.orbits[0];
        check(o.rep.polytope.vertices().len() == vertices, || {
            format!("{name}: {} vertices", o.rep.polytope.vertices().len())
        })?;
        check(o.orbit_size == size, || format!("{name}: |O| = {}", o.orbit_size))?;
        check(o.tvol == tvol, || format!("{name}: tvol {}", o.tvol))?;
    }
    Ok("triangle 4 x 1/4, square 4 x 1/4, cube 8 x 1/8".into())
}

/// Maximum of float `d_min` over the grid `{k/steps}^n` of the unit cube.
fn grid_max(norm: &PolyhedralNorm, steps: usize) -> f64 {
    let n = norm.dim();
    let forms = float_forms(norm);
    let offsets: Vec<Vec<f64>> = (0..4usize.pow(n as u32))
        .map(|k| (0..n).map(|i| ((k / 4usize.pow(i as u32)) % 4) as f64 - 1.0).collect())
        .collect();
    let mut best = 0.0f64;
    let mut y = vec![0.0; n];
    for k in 0..steps.pow(n as u32) {
        let x: Vec<f64> = (0..n)
            .map(|i| ((k / steps.pow(i as u32)) % steps) as f64 / steps as f64)
            .collect();
        let mut d = f64::INFINITY;
        for o in &offsets {
            for i in 0..n {
                y[i] = x[i] - o[i];
            }
            d = d.min(float_norm(&forms, &y));
        }
        best = best.max(d);
    }
    best
}

fn criterion_4(cs: &[Config]) -> Result<String, String> {
    for c in cs.iter().filter(|c| c.lattice == 'Z') {
        let n = c.norm.dim();
        let cov = covering_radius(&c.d);
        let expected = if c.name.ends_with("Linf") {
            rat(1, 2)
        } else {
            rat(n as i64, 2)
        };
        check(cov.value == expected, || format!("{}: cov {}", c.name, cov.value))?;
        check(
            d_min(&cov.witness, &c.norm).map_err(|e| e.to_string())? == cov.value,
            || format!("{}: witness", c.name),
        )?;
        let sampled = grid_max(&c.norm, 100);
        check((sampled - to_f64(&cov.value)).abs() <= 0.02, || {
            format!("{}: grid {sampled} vs {}", c.name, cov.value)
        })?;
    }
    Ok("1/2 and n/2 for n = 1, 2, 3; 100^n grid agrees within 2/100".into())
}

fn criterion_5(cs: &[Config]) -> Result<String, String> {
    let mut total = 0;
    for c in cs {
        let record = verify(&c.d, 100).map_err(|e| e.to_string())?;
        check(record.random_mismatches.is_empty(), || {
            format!("{}: {:?}", c.name, record.random_mismatches)
        })?;
        check(record.random_points_checked == 100 * c.d.orbits.len(), || {
            c.name.clone()
        })?;
        check(record.passed(), || format!("{}: {record:?}", c.name))?;
        total += record.random_points_checked;
    }
    Ok(format!("{total} interior points, zero mismatches"))
}

fn criterion_6(cs: &[Config]) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut count = 0;
    for c in cs.iter().filter(|c| c.norm.dim() >= 2) {
        for _ in 0..200 {
            let x = random_rational_point(&mut rng, c.norm.dim(), 3);
            let got = closest_lattice_points(&x, &c.norm).map_err(|e| e.to_string())?;
            let want = brute_closest(&c.norm, &x);
            check(got == want, || format!("{} at {x}: {got:?} vs {want:?}", c.name))?;
            count += 1;
        }
    }
    Ok(format!("{count} points over {} configurations", count / 200))
}

fn criterion_7(cs: &[Config]) -> Result<String, String> {
    let linf = d_points(&find(cs, "Z2/Linf").d).map_err(|e| e.to_string())?;
    let l1 = d_points(&find(cs, "Z2/L1").d).map_err(|e| e.to_string())?;
    check(linf.dimension == 1, || format!("Z2/Linf: {}", linf.dimension))?;
    check(l1.dimension == 0, || format!("Z2/L1: {}", l1.dimension))?;
    Ok("Z2/Linf 1, Z2/L1 0".into())
}

fn signed_permutations(n: usize) -> Vec<IntMatrix> {
    let mut perms: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..n {
        perms = perms
            .into_iter()
            .flat_map(|p| {
                (0..n)
                    .filter(|i| !p.contains(i))
                    .map(|i| [p.clone(), vec![i]].concat())
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    let mut out = Vec::new();
    for p in perms {
        for signs in 0..1u32 << n {
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if p[i] == j {
                                if signs >> i & 1 == 1 {
                                    -1
                                } else {
                                    1
                                }
                            } else {
                                0
                            }
                        })
                        .collect()
                })
                .collect();
            out.push(IntMatrix::from_rows(&rows).unwrap());
        }
    }
    out
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn criterion_8(cs: &[Config], findings: &mut Vec<String>) -> Result<String, String> {
    for c in cs.iter().filter(|c| c.lattice == 'Z') {
        let n = c.norm.dim();
        let forms: BTreeSet<_> = c.norm.forms().iter().cloned().collect();
        let oracle: BTreeSet<IntMatrix> = signed_permutations(n)
            .into_iter()
            .filter(|a| c.norm.forms().iter().map(|f| f.compose(a)).collect::<BTreeSet<_>>() == forms)
            .collect();
        let group: BTreeSet<IntMatrix> = c.d.group.elements().iter().cloned().collect();
        check(oracle.len() == (1 << n) * factorial(n), || {
            format!("{}: oracle {}", c.name, oracle.len())
        })?;
        check(group == oracle, || {
            format!("{}: group of order {}", c.name, group.len())
        })?;
    }
    for c in cs.iter().filter(|c| c.lattice != 'Z') {
        let n = c.norm.dim();
        let expected = if c.lattice == 'A' {
            2 * factorial(n + 1)
        } else {
            (1 << n) * factorial(n)
        };
        check(c.d.group.order() == expected, || {
            format!("{}: order {} vs {expected}", c.name, c.d.group.order())
        })?;
    }
    for (label, ambient) in [("L1", PolyhedralNorm::l1(2)), ("Linf", PolyhedralNorm::l_infinity(2))] {
        let norm = pullback_norm(&ambient, &an_basis(1).unwrap()).unwrap();
        let order = point_group(&norm).order();
        if order != 4 {
            findings.push(format!(
                "A1/{label}: point group has order {order}, not 2(n+1)! = 4; GL_1(Z) = {{1, -1}}, and -1 acts like the transposition"
            ));
        }
    }
    Ok("Z^n signed permutations, A2, A3 = 2(n+1)!, D2, D3 = 2^n n!".into())
}

fn criterion_9(cs: &[Config], findings: &mut Vec<String>) -> Result<String, String> {
    let mut elapsed = Duration::ZERO;
    for c in cs.iter().filter(|c| c.lattice != 'Z') {
        let t = Instant::now();
        let record = verify(&c.d, 20).map_err(|e| e.to_string())?;
        check(record.passed(), || {
            format!("{}: inconsistent verification {record:?}", c.name)
        })?;
        let result = euclidean_comparison(&c.d, &c.basis).map_err(|e| e.to_string())?;
        let vertices = voronoi_vertices(&c.d, &QVector::zeros(c.norm.dim())).map_err(|e| e.to_string())?;
        elapsed += c.elapsed + t.elapsed();
        findings.push(format!(
            "{}: V_<=(0) {} Euclidean cell ({} vertices), closure(V_<) {} V_<= (volumes {} / {}); {} Voronoi vertices{}, wall readings {}",
            c.name,
            if result.matches_euclidean { "equals" } else { "DIFFERS FROM" },
            result.euclidean_vertices.len(),
            if result.closure_matches() { "=" } else { "!=" },
            result.open_volume,
            result.closed_volume,
            vertices.vertices.len(),
            if vertices.vertices == result.euclidean_vertices { " (the Euclidean ones)" } else { "" },
            if vertices.readings_agree() { "agree" } else { "DISAGREE" }
        ));
    }
    check(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}"))?;
    Ok(format!("8 configurations verified and compared in {elapsed:.2?}"))
}

fn star_convexity(cs: &[Config], rng: &mut impl Rng) -> Result<(), String> {
    for c in cs.iter().filter(|c| c.norm.dim() <= 2 || c.lattice == 'Z') {
        let n = c.norm.dim();
        let region = voronoi_region(&c.d, &QVector::zeros(n), true);
        for _ in 0..200 {
            let piece = &region.pieces[rng.gen_range(0..region.pieces.len())];
            let x = interior_point(rng, piece.polytope.vertices());
            let t = rat(rng.gen_range(1..=8), 8);
            let y = x.scale(&t);
            let (d, _) = brute_closest(&c.norm, &y);
            check(c.norm.value(&y) == d, || {
                format!("{}: {y} is closer to another lattice point", c.name)
            })?;
        }
    }
    Ok(())
}

/// A sampled arrangement cell has the volume of the VN-space images inside it.
fn tiling_refinement(cs: &[Config], rng: &mut impl Rng) -> Result<(), String> {
    for c in cs.iter().filter(|c| c.d.orbits.len() <= 2) {
        let n = c.norm.dim();
        let cell = loop {
            let x = random_rational_point(rng, n, 1);
            if let Ok((_, cell)) = c.d.aha.cell_of_point(&x) {
                break cell;
            }
        };
        let hull = cell.dual_description().map_err(|e| format!("{}: {e}", c.name))?;
        let cell_volume = volume(&hull).map_err(|e| e.to_string())?.value;
        let lo: Vec<Rational> = (0..n)
            .map(|i| hull.vertices().iter().map(|v| v[i].clone()).min().unwrap())
            .collect();
        let hi: Vec<Rational> = (0..n)
            .map(|i| hull.vertices().iter().map(|v| v[i].clone()).max().unwrap())
            .collect();
        let mut inside = BTreeSet::new();
        let mut covered = Rational::zero();
        for o in &c.d.orbits {
            let center = o.rep.isobarycenter();
            for a in c.d.group.elements() {
                let moved = a.apply(&center);
                let ranges: Vec<(i64, i64)> = (0..n)
                    .map(|i| {
                        let floor = |q: Rational| q.floor().to_integer().to_i64().unwrap();
                        (floor(&lo[i] - &moved[i]), floor(&hi[i] - &moved[i]) + 1)
                    })
                    .collect();
                let mut t: Vec<i64> = ranges.iter().map(|r| r.0).collect();
                'shifts: loop {
                    let shift = QVector::from_ints(&t);
                    if cell.strictly_contains(&(&moved + &shift)) {
                        let g = AffineSymmetry {
                            linear: a.clone(),
                            shift,
                        };
                        if inside.insert(g.map_polytope(&o.rep.polytope)) {
                            covered += &o.tvol;
                        }
                    }
                    for i in 0..n {
                        t[i] += 1;
                        if t[i] <= ranges[i].1 {
                            continue 'shifts;
                        }
                        t[i] = ranges[i].0;
                    }
                    break;
                }
            }
        }
        check(covered == cell_volume, || {
            format!("{}: cell volume {cell_volume}, tiles {covered}", c.name)
        })?;
    }
    Ok(())
}

fn norm_axioms(cs: &[Config], rng: &mut impl Rng) -> Result<(), String> {
    for c in cs {
        let n = c.norm.dim();
        for _ in 0..100 {
            let x = random_rational_point(rng, n, 4);
            let y = random_rational_point(rng, n, 4);
            let s = rat(rng.gen_range(0..=20), rng.gen_range(1..=5));
            check(c.norm.value(&(&x + &y)) <= c.norm.value(&x) + c.norm.value(&y), || {
                format!("{}: triangle", c.name)
            })?;
            check(c.norm.value(&x.scale(&s)) == &s * c.norm.value(&x), || {
                format!("{}: homogeneity", c.name)
            })?;
            check(x.is_zero() || c.norm.value(&x).is_positive(), || {
                format!("{}: positivity", c.name)
            })?;
        }
    }
    Ok(())
}

fn adaptedness(cs: &[Config]) -> Result<(), String> {
    for c in cs {
        let set = adapted_set(&c.norm, Strategy::Auto).map_err(|e| e.to_string())?;
        check(missing_wall(&c.norm, &set).is_none(), || {
            format!("{}: not adapted", c.name)
        })?;
        for class in c.d.aha.classes() {
            check(
                !class.step.is_zero() && class.form.apply(&class.witness) == class.step,
                || format!("{}: step", c.name),
            )?;
        }
    }
    Ok(())
}

fn round_trips(cs: &[Config]) -> Result<(), String> {
    for c in cs {
        for o in &c.d.orbits {
            let p = &o.rep.polytope;
            let fs = facets(p).map_err(|e| e.to_string())?;
            let h =
                HPolyhedron::new(p.dim(), fs.iter().map(|f| f.inequality()).collect()).map_err(|e| e.to_string())?;
            let back = h.dual_description().map_err(|e| e.to_string())?;
            check(&back == p, || format!("{}: round trip", c.name))?;
        }
    }
    Ok(())
}

fn orbit_stabilizer(cs: &[Config]) -> Result<(), String> {
    for c in cs {
        let g = c.d.group.order();
        for o in &c.d.orbits {
            check(
                g % o.stabilizer.len() == 0 && o.orbit_size * o.stabilizer.len() == g,
                || {
                    format!(
                        "{}: |O| = {}, |Stab| = {}, |G| = {g}",
                        c.name,
                        o.orbit_size,
                        o.stabilizer.len()
                    )
                },
            )?;
        }
    }
    Ok(())
}

fn determinism() -> Result<(), String> {
    for (lattice, dim, norm) in [("Zn", 2, "l1"), ("An", 2, "linf"), ("Zn", 3, "linf")] {
        let job = JobSpec {
            dim,
            norm: NormSpec::Named(norm.into()),
            lattice: LatticeSpec::Named(lattice.into()),
            adapted: "auto".into(),
            tasks: Vec::new(),
            seed: 99,
            trials: 10,
        };
        let a = job::run(&job).map_err(|e| e.to_string())?.report.to_json();
        let b = job::run(&job).map_err(|e| e.to_string())?.report.to_json();
        check(a == b, || format!("{lattice}{dim}/{norm}: reports differ"))?;
    }
    Ok(())
}

fn covering_bound(cs: &[Config], rng: &mut impl Rng) -> Result<(), String> {
    for c in cs.iter().filter(|c| c.lattice == 'Z') {
        let cov = covering_radius(&c.d).value;
        for _ in 0..1000 {
            let x = random_rational_point(rng, c.norm.dim(), 2);
            check(d_min(&x, &c.norm).map_err(|e| e.to_string())? <= cov, || {
                format!("{}: d_min({x}) > cov", c.name)
            })?;
        }
    }
    Ok(())
}

fn d_points_are_local_maxima(cs: &[Config], rng: &mut impl Rng) -> Result<(), String> {
    for name in ["Z2/Linf", "Z2/L1", "Z3/L1", "A2/Linf"] {
        let c = find(cs, name);
        let n = c.norm.dim();
        let dp = d_points(&c.d).map_err(|e| e.to_string())?;
        for piece in &dp.pieces {
            let x = interior_point(rng, piece.vertices());
            let base = d_min(&x, &c.norm).map_err(|e| e.to_string())?;
            for _ in 0..50 {
                let u = random_rational_point(rng, n, 1);
                let y = &x + &u.scale(&rat(1, 1000));
                check(d_min(&y, &c.norm).map_err(|e| e.to_string())? <= base, || {
                    format!("{name}: {x} is not a local maximum")
                })?;
            }
        }
    }
    Ok(())
}

fn criterion_10(cs: &[Config]) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 10);
    type Suite<'a> = Box<dyn Fn(&mut ChaCha8Rng) -> Result<(), String> + 'a>;
    let suites: [(&str, Suite); 9] = [
        ("star-convexity", Box::new(|r| star_convexity(cs, r))),
        ("tiling refinement", Box::new(|r| tiling_refinement(cs, r))),
        ("norm axioms", Box::new(|r| norm_axioms(cs, r))),
        ("adaptedness", Box::new(|_| adaptedness(cs))),
        ("dual round-trip", Box::new(|_| round_trips(cs))),
        ("orbit-stabilizer", Box::new(|_| orbit_stabilizer(cs))),
        ("determinism", Box::new(|_| determinism())),
        ("cov bound", Box::new(|r| covering_bound(cs, r))),
        ("D-point maxima", Box::new(|r| d_points_are_local_maxima(cs, r))),
    ];
    let mut names = Vec::new();
    for (name, suite) in &suites {
        suite(&mut rng).map_err(|e| format!("{name}: {e}"))?;
        names.push(*name);
    }
    Ok(names.join(", "))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cs = configs();
    let mut findings = Vec::new();
    let results: Vec<(&str, Result<String, String>)> = vec![
        ("Z^n hypercube Voronoi region", criterion_1(&cs)),
        ("volume identity", criterion_2(&cs)),
        ("orbit inventory", criterion_3(&cs)),
        ("covering radii", criterion_4(&cs)),
        ("random-point re-derivation", criterion_5(&cs)),
        ("d_min oracle equivalence", criterion_6(&cs)),
        ("D-point dimensions", criterion_7(&cs)),
        ("point-group orders", criterion_8(&cs, &mut findings)),
        ("Euclidean comparison harness", criterion_9(&cs, &mut findings)),
        ("property suites", criterion_10(&cs)),
    ];
    let mut failed = 0;
    for (i, (name, r)) in results.iter().enumerate() {
        match r {
            Ok(detail) => println!("PASS criterion {:>2} {name}: {detail}", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name}: {e}", i + 1);
            }
        }
    }
    for f in &findings {
        println!("FINDING {f}");
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1?}",
        results.len() - failed,
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
