use std::path::Path;

use lamcohom::circle::{
    approximating_lengths, indicator_coboundary, is_rotation_invariant, one_is_coboundary, zero_set, CoboundaryAnswer,
};
use lamcohom::cohomology::{apply_coboundary, betti_numbers, cohomology, is_coboundary};
use lamcohom::complex::io::ComplexFile;
use lamcohom::constructions::{excision_check, mayer_vietoris_check};
use lamcohom::corpus;
use lamcohom::exact::{pair_sequence_check, SequenceReport};
use lamcohom::geometry::io::{regions_to_json, simplices_to_json, AdaptedJson};
use lamcohom::geometry::regions::{all_interiors_disjoint, contained_in_inputs, pairwise_attached};
use lamcohom::geometry::{adapted_subdivision, attach_decompose, simplex_volume_sum, triangulate, LinearRegion};
use lamcohom::homotopy::{cylinder_homotopy, homotopy_operator, induced_maps_agree, SimplicialMap};
use lamcohom::l2::{inner_product, inner_product_f64, L2Space};
use lamcohom::rational::{self, parse_rational, Rational};
use lamcohom::subdivide::barycentric_subdivide;
use lamcohom::{CoeffKind, Cochain, FiberedComplex, Field, Subcomplex, Z2};
use serde_json::{json, Value};

use crate::recipe::{regions, HomotopyKind, Input, InputError, Loaded, Recipe, RecipeFile};
use crate::report::{Report, Table};

pub struct Options {
    pub coeff: Option<CoeffKind>,
    pub degree: Option<usize>,
    pub tol: f64,
}

/// Where the input comes from: a recipe file or a corpus seed.
pub enum Source {
    Recipe(Loaded),
    Seed(u64),
}

impl Source {
    fn recipe(&self) -> Option<&RecipeFile> {
        match self {
            Source::Recipe(l) => Some(&l.file),
            Source::Seed(_) => None,
        }
    }

    fn complex(&self) -> Input<FiberedComplex> {
        match self {
            Source::Recipe(l) => l.file.recipe.build_complex(&l.dir),
            Source::Seed(s) => Ok(corpus::random_complex(&mut corpus::rng(*s))),
        }
    }

    fn subcomplex(&self, c: &FiberedComplex, name: &str) -> Input<Subcomplex> {
        let file = self.recipe().expect("seeded runs build their own subcomplexes");
        file.subcomplexes
            .get(name)
            .ok_or_else(|| InputError(format!("the recipe names no subcomplex {name:?}")))?
            .build(c)
    }
}

fn q(r: &Rational) -> String {
    rational::format_rational(r)
}

fn f(x: f64) -> String {
    format!("{x:e}")
}

fn degrees(c: &FiberedComplex, opts: &Options) -> Input<Vec<usize>> {
    match opts.degree {
        Some(n) if n >= c.num_dims() => {
            Err(InputError(format!("degree {n} is out of range for a complex of {} dimensions", c.num_dims())))
        }
        Some(n) => Ok(vec![n]),
        None => Ok((0..c.num_dims()).collect()),
    }
}

fn exact_coeff(opts: &Options, file: Option<&RecipeFile>) -> CoeffKind {
    opts.coeff.or(file.and_then(|f| f.coeff)).unwrap_or(CoeffKind::Q)
}

fn cochain_json<F: Field>(w: &Cochain<F>, show: impl Fn(&F) -> Value) -> Value {
    Value::Array(w.values().iter().map(|fam| Value::Array(fam.iter().map(&show).collect())).collect())
}

pub fn validate(src: &Source) -> Input<Report> {
    let c = src.complex()?;
    let mut r = Report::new("validate");
    let violations = c.validate();
    let mut t = Table::new("violations", vec!["kind", "detail"]);
    for v in &violations {
        t.row(vec![v.kind().to_string(), v.to_string()]);
    }
    let counts: Vec<usize> = (0..c.num_dims()).map(|n| c.count(n)).collect();
    let mut s = Table::new("instances", vec!["degree", "families", "instances"]);
    for (n, k) in counts.iter().enumerate() {
        s.row(vec![n.to_string(), c.families(n).len().to_string(), k.to_string()]);
    }
    r.tables.push(s);
    r.tables.push(t);
    r.set("instances", json!(counts));
    r.set("atoms", json!(c.transversal().len()));
    r.set(
        "violations",
        Value::Array(violations.iter().map(|v| json!({"kind": v.kind(), "detail": v.to_string()})).collect()),
    );
    if let Some(v) = violations.first() {
        r.fail(v.to_string());
    }
    Ok(r)
}

fn constant_class<F: Field>(c: &FiberedComplex, n: usize) -> Input<&'static str> {
    let one = Cochain::constant(c, n, F::one());
    if !apply_coboundary(c, &one)?.is_zero() {
        return Ok("not-a-cocycle");
    }
    Ok(if is_coboundary(c, &one)? { "trivial" } else { "nontrivial" })
}

fn cohomology_rows<F: Field>(
    c: &FiberedComplex,
    degs: &[usize],
    t: &mut Table,
    show: impl Fn(&F) -> Value + Copy,
) -> Input<Vec<Value>> {
    let mut out = Vec::new();
    for &n in degs {
        let h = cohomology::<F>(c, n, None)?;
        let class = constant_class::<F>(c, n)?;
        t.row(vec![n.to_string(), h.dim.to_string(), c.count(n).to_string(), class.to_string()]);
        out.push(json!({
            "degree": n,
            "dim": h.dim,
            "constant_class": class,
            "generators": h.basis.iter().map(|b| cochain_json(b, show)).collect::<Vec<_>>(),
        }));
    }
    Ok(out)
}

pub fn cohomology_cmd(src: &Source, opts: &Options) -> Input<Report> {
    let c = src.complex()?;
    let coeff = exact_coeff(opts, src.recipe());
    let degs = degrees(&c, opts)?;
    let mut r = Report::new("cohomology");
    let mut t = Table::new(format!("cohomology over {coeff}"), vec!["degree", "dim", "instances", "constant_class"]);
    let rows = match coeff {
        CoeffKind::Z2 => cohomology_rows::<Z2>(&c, &degs, &mut t, |x| json!(u8::from(x.0)))?,
        CoeffKind::Q => cohomology_rows::<Rational>(&c, &degs, &mut t, |x| json!(q(x)))?,
        CoeffKind::R => {
            return Err(InputError(
                "wrong backend: exact cohomology needs z2 or q coefficients; use hodge or betti for r".into(),
            ))
        }
    };
    r.tables.push(t);
    r.set("coeff", json!(coeff));
    r.set("degrees", Value::Array(rows));
    Ok(r)
}

pub fn betti(src: &Source, opts: &Options) -> Input<Report> {
    let c = src.complex()?;
    let coeff = exact_coeff(opts, src.recipe());
    let degs = degrees(&c, opts)?;
    let space = L2Space::new(&c)?;
    let dims = if coeff.is_exact() { Some(betti_numbers(&c, coeff, None)?) } else { None };
    let mut r = Report::new("betti");
    let mut t = Table::new("betti numbers", vec!["degree", "dim_h", "lambda_betti", "lambda_betti_float"]);
    let mut rows = Vec::new();
    for &n in &degs {
        let exact = coeff.is_exact().then(|| space.l2_betti(n));
        let float = space.l2_betti_f64(n, opts.tol);
        let dim = dims.as_ref().map(|d| d[n]);
        t.row(vec![
            n.to_string(),
            dim.map_or("-".into(), |d| d.to_string()),
            exact.as_ref().map_or("-".into(), q),
            f(float),
        ]);
        rows.push(json!({
            "degree": n,
            "dim_h": dim,
            "lambda_betti": exact.as_ref().map(q),
            "lambda_betti_float": float,
        }));
        if let Some(e) = &exact {
            if (rational::to_f64(e) - float).abs() > opts.tol.max(1e-8) * rational::to_f64(e).abs().max(1.0) {
                r.fail(format!("degree {n}: exact {} and float {} disagree", q(e), f(float)));
            }
        }
    }
    r.tables.push(t);
    r.set("coeff", json!(coeff));
    r.set("degrees", Value::Array(rows));
    r.set("weighted_euler_characteristic", json!(q(&lamcohom::l2::weighted_euler_characteristic(&c))));
    Ok(r)
}

fn parse_cochain(c: &FiberedComplex, spec: &crate::recipe::CochainSpec) -> Input<Cochain<Rational>> {
    let values = spec
        .values
        .iter()
        .map(|fam| fam.iter().map(|s| parse_rational(s)).collect::<lamcohom::Result<Vec<_>>>())
        .collect::<lamcohom::Result<Vec<_>>>()?;
    let w = Cochain::from_values(spec.degree, values);
    w.check_layout(c)?;
    Ok(w)
}

pub fn hodge(src: &Source, opts: &Options) -> Input<Report> {
    let c = src.complex()?;
    let degs = degrees(&c, opts)?;
    let space = L2Space::new(&c)?;
    let mut r = Report::new("hodge");
    let mut t = Table::new(
        "harmonic spaces",
        vec!["degree", "kernel_dim", "lambda_betti", "lambda_betti_float", "orthogonality_residual", "eigen_residual"],
    );
    let mut reports = Vec::new();
    for &n in &degs {
        let h = space.report(n, opts.tol);
        t.row(vec![
            n.to_string(),
            h.kernel_dim.to_string(),
            q(&h.lambda_betti),
            f(h.lambda_betti_float),
            f(h.orthogonality_residual),
            f(h.eigen_residual),
        ]);
        let bound = opts.tol.max(1e-8);
        if h.orthogonality_residual > bound || h.eigen_residual > bound {
            r.fail(format!(
                "degree {n}: residuals {} and {} exceed {}",
                f(h.orthogonality_residual),
                f(h.eigen_residual),
                f(bound)
            ));
        }
        reports.push(serde_json::to_value(&h).expect("report serializes"));
    }
    r.tables.push(t);
    r.set("degrees", Value::Array(reports));
    if let Some(spec) = src.recipe().and_then(|f| f.cochain.as_ref()) {
        let w = parse_cochain(&c, spec)?;
        let mut d = Table::new("decomposition", vec!["component", "norm_squared"]);
        if exact_coeff(opts, src.recipe()) == CoeffKind::R {
            let wf = w.map(rational::to_f64);
            let h = space.hodge_decompose_f64(&wf)?;
            let parts = [("harmonic", &h.harmonic), ("exact", &h.exact), ("coexact", &h.coexact)];
            let mut obj = serde_json::Map::new();
            for (name, p) in parts {
                d.row(vec![name.to_string(), f(inner_product_f64(&c, p, p)?)]);
                obj.insert(name.into(), cochain_json(p, |x| json!(x)));
            }
            let rest = wf.sub(&h.harmonic.add(&h.exact).add(&h.coexact));
            let residual = inner_product_f64(&c, &rest, &rest)?.sqrt();
            if residual > opts.tol.max(1e-8) * inner_product_f64(&c, &wf, &wf)?.sqrt().max(1.0) {
                r.fail(format!("decomposition residual {}", f(residual)));
            }
            obj.insert("residual".into(), json!(residual));
            r.set("decomposition", Value::Object(obj));
        } else {
            let h = space.hodge_decompose(&w)?;
            let parts = [("harmonic", &h.harmonic), ("exact", &h.exact), ("coexact", &h.coexact)];
            let mut obj = serde_json::Map::new();
            for (name, p) in parts {
                d.row(vec![name.to_string(), q(&inner_product(&c, p, p)?)]);
                obj.insert(name.into(), cochain_json(p, |x| json!(q(x))));
            }
            r.set("decomposition", Value::Object(obj));
        }
        r.tables.push(d);
    }
    Ok(r)
}

fn sequence_report(r: &mut Report, title: &str, reports: &[SequenceReport]) {
    let mut t = Table::new(title, vec!["coeff", "node", "dim", "rank_in", "rank_out", "exact"]);
    for s in reports {
        for n in &s.nodes {
            t.row(vec![
                s.coeff.to_string(),
                n.label.clone(),
                n.dim.to_string(),
                n.rank_in.to_string(),
                n.rank_out.to_string(),
                n.exact.to_string(),
            ]);
        }
        if let Some(n) = s.first_failure() {
            r.fail(format!(
                "{} over {}: dim {}, incoming rank {}, outgoing rank {}",
                n.label, s.coeff, n.dim, n.rank_in, n.rank_out
            ));
        }
    }
    r.tables.push(t);
    r.set("sequences", serde_json::to_value(reports).expect("reports serialize"));
}

pub fn check_pair(src: &Source) -> Input<Report> {
    let (c, a) = match src {
        Source::Seed(s) => corpus::random_pair(&mut corpus::rng(*s)),
        _ => {
            let c = src.complex()?;
            let a = src.subcomplex(&c, "a")?;
            (c, a)
        }
    };
    let mut r = Report::new("check-pair");
    sequence_report(&mut r, "pair sequence", &pair_sequence_check(&c, &a)?);
    Ok(r)
}

pub fn check_mv(src: &Source) -> Input<Report> {
    let (c, u, v) = match src {
        Source::Seed(s) => corpus::random_mv_cover(&mut corpus::rng(*s)),
        _ => {
            let c = src.complex()?;
            let u = src.subcomplex(&c, "u")?;
            let v = src.subcomplex(&c, "v")?;
            (c, u, v)
        }
    };
    let mut r = Report::new("check-mv");
    sequence_report(&mut r, "Mayer-Vietoris sequence", &mayer_vietoris_check(&c, &u, &v)?);
    Ok(r)
}

pub fn check_excision(src: &Source) -> Input<Report> {
    let (c, u, z) = match src {
        Source::Seed(s) => corpus::random_excision(&mut corpus::rng(*s)),
        _ => {
            let c = src.complex()?;
            let u = src.subcomplex(&c, "u")?;
            let z = src.subcomplex(&c, "z")?;
            (c, u, z)
        }
    };
    let reports = excision_check(&c, &u, &z)?;
    let mut r = Report::new("check-excision");
    let mut t = Table::new("excision", vec!["coeff", "degree", "dim_full", "dim_excised", "equal"]);
    for e in &reports {
        for n in 0..e.full.len() {
            t.row(vec![
                e.coeff.to_string(),
                n.to_string(),
                e.full[n].to_string(),
                e.excised[n].to_string(),
                (e.full[n] == e.excised[n]).to_string(),
            ]);
            if e.full[n] != e.excised[n] {
                r.fail(format!(
                    "degree {n} over {}: H(X,U) has dim {} but H(X-Z,U-Z) has dim {}",
                    e.coeff, e.full[n], e.excised[n]
                ));
            }
        }
    }
    r.tables.push(t);
    r.set("excision", serde_json::to_value(&reports).expect("reports serialize"));
    Ok(r)
}

pub fn homotopy(src: &Source) -> Input<Report> {
    let k = src.complex()?;
    let kind = src.recipe().and_then(|f| f.homotopy).unwrap_or(HomotopyKind::Cylinder);
    let (prism, bottom, top, h) = cylinder_homotopy(&k);
    let (l, f0, g0, h) = match kind {
        HomotopyKind::Cylinder => (prism.complex.clone(), bottom, top, h),
        HomotopyKind::Projection => {
            let id = SimplicialMap::identity(&k);
            (k.clone(), id.clone(), id, prism.projection())
        }
        HomotopyKind::CollapseBottom | HomotopyKind::CollapseTop => {
            let end = prism.inclusion(&k, u8::from(kind == HomotopyKind::CollapseTop));
            (prism.complex.clone(), end.clone(), end.clone(), prism.projection().then(&end))
        }
    };
    let cert = homotopy_operator(&k, &l, &f0, &g0, &prism, &h)?;
    let mut r = Report::new("homotopy");
    let mut t = Table::new("chain homotopy", vec!["degree", "identity_holds", "induced_maps_agree"]);
    let mut rows = Vec::new();
    for (m, &holds) in cert.holds.iter().enumerate() {
        let agree = if m < l.num_dims() { Some(induced_maps_agree(&k, &l, &cert, m)?) } else { None };
        t.row(vec![m.to_string(), holds.to_string(), agree.map_or("-".into(), |a| a.to_string())]);
        rows.push(json!({"degree": m, "identity_holds": holds, "induced_maps_agree": agree}));
        if !holds {
            r.fail(format!("dP + Pd = g* - f* fails in degree {m}"));
        }
        if agree == Some(false) {
            r.fail(format!("f* and g* differ on cohomology in degree {m}"));
        }
    }
    r.tables.push(t);
    let name = match kind {
        HomotopyKind::Cylinder => "cylinder",
        HomotopyKind::Projection => "projection",
        HomotopyKind::CollapseBottom => "collapse-bottom",
        HomotopyKind::CollapseTop => "collapse-top",
    };
    r.set("homotopy", json!(name));
    r.set("degrees", Value::Array(rows));
    Ok(r)
}

pub fn subdivide(src: &Source, opts: &Options) -> Input<Report> {
    let c = src.complex()?;
    let sd = barycentric_subdivide(&c);
    let coeff = exact_coeff(opts, src.recipe());
    if !coeff.is_exact() {
        return Err(InputError("wrong backend: subdivide compares exact cohomology; use z2 or q".into()));
    }
    let before = betti_numbers(&c, coeff, None)?;
    let after = betti_numbers(&sd, coeff, None)?;
    let lb = L2Space::new(&c)?;
    let la = L2Space::new(&sd)?;
    let mut r = Report::new("subdivide");
    let mut t = Table::new(
        "subdivision",
        vec!["degree", "instances", "instances_sd", "dim_h", "dim_h_sd", "lambda_betti", "lambda_betti_sd"],
    );
    for n in 0..c.num_dims() {
        let (x, y) = (lb.l2_betti(n), la.l2_betti(n));
        t.row(vec![
            n.to_string(),
            c.count(n).to_string(),
            sd.count(n).to_string(),
            before[n].to_string(),
            after[n].to_string(),
            q(&x),
            q(&y),
        ]);
        if before[n] != after[n] || x != y {
            r.fail(format!("degree {n}: invariants change under subdivision"));
        }
    }
    r.tables.push(t);
    r.set("coeff", json!(coeff));
    r.set("complex", serde_json::to_value(ComplexFile::from_complex(&sd)).expect("complex serializes"));
    Ok(r)
}

fn geometry_regions(r: &mut Report, boxes: &[LinearRegion]) -> Input<()> {
    let pieces = attach_decompose(boxes)?;
    let tri = triangulate(&pieces)?;
    let input_volume = boxes.iter().try_fold(Rational::from_integer(0.into()), |acc, b| b.volume().map(|v| acc + v))?;
    let mut t = Table::new("pieces", vec!["piece", "convex_parts", "volume"]);
    let mut total = Rational::from_integer(0.into());
    for (i, p) in pieces.iter().enumerate() {
        let v = p.volume()?;
        t.row(vec![i.to_string(), p.pieces.len().to_string(), q(&v)]);
        total += v;
    }
    r.tables.push(t);
    let attached = pairwise_attached(&pieces)?;
    let inside = contained_in_inputs(&pieces, boxes)?;
    let dim = boxes.first().map_or(0, |b| b.ambient_dim);
    let disjoint = (dim <= 3).then(|| all_interiors_disjoint(&tri));
    let tri_volume = simplex_volume_sum(&tri);
    let mut s = Table::new("checks", vec!["check", "value"]);
    s.row(vec!["pieces".into(), pieces.len().to_string()]);
    s.row(vec!["simplices".into(), tri.len().to_string()]);
    s.row(vec!["piece_volume".into(), q(&total)]);
    s.row(vec!["simplex_volume".into(), q(&tri_volume)]);
    s.row(vec!["pairwise_attached".into(), attached.to_string()]);
    s.row(vec!["contained_in_inputs".into(), inside.to_string()]);
    s.row(vec!["interiors_disjoint".into(), disjoint.map_or("-".into(), |d| d.to_string())]);
    r.tables.push(s);
    if !attached {
        r.fail("two output pieces are not attached");
    }
    if !inside {
        r.fail("an output piece leaves the input union");
    }
    if disjoint == Some(false) {
        r.fail("two simplices overlap");
    }
    if tri_volume != total {
        r.fail(format!("triangulation volume {} differs from piece volume {}", q(&tri_volume), q(&total)));
    }
    r.set("pieces", regions_to_json(&pieces));
    r.set("simplices", simplices_to_json(&tri));
    r.set("volume", json!(q(&total)));
    r.set("input_volume_with_overlaps", json!(q(&input_volume)));
    Ok(())
}

pub fn geometry(src: &Source) -> Input<Report> {
    let mut r = Report::new("geometry");
    match src {
        Source::Seed(s) => geometry_regions(&mut r, &corpus::random_boxes(&mut corpus::rng(*s)))?,
        Source::Recipe(l) => match &l.file.recipe {
            Recipe::Geometry { regions: Some(raw), cover: None } => geometry_regions(&mut r, &regions(raw)?)?,
            Recipe::Geometry { regions: None, cover: Some(cover) } => {
                let s = adapted_subdivision(cover.dim, cover.atoms, &cover.elements)?;
                let mut t = Table::new("adapted blocks", vec!["block", "atoms", "depth", "trace", "simplices"]);
                for (i, b) in s.blocks.iter().enumerate() {
                    let atoms: Vec<String> = b.atoms.iter().map(ToString::to_string).collect();
                    t.row(vec![
                        i.to_string(),
                        atoms.join(","),
                        b.depth.to_string(),
                        b.trace.len().to_string(),
                        b.simplices.len().to_string(),
                    ]);
                    if !b.refines_cover() {
                        r.fail(format!("block {i} has a simplex outside every box of its trace"));
                    }
                }
                if !s.is_partition(cover.atoms) {
                    r.fail("the blocks do not partition the atoms");
                }
                r.tables.push(t);
                r.set("adapted", serde_json::to_value(AdaptedJson::from(&s)).expect("serializes"));
            }
            Recipe::Geometry { .. } => {
                return Err(InputError("a geometry recipe needs exactly one of \"regions\" and \"cover\"".into()))
            }
            other => return Err(InputError(format!("geometry needs a geometry recipe, got {}", other.kind()))),
        },
    }
    Ok(r)
}

pub fn arcs(src: &Source) -> Input<Report> {
    let (sets, angles, levels) = match src {
        Source::Seed(s) => {
            let (b, a) = corpus::random_arc_family(&mut corpus::rng(*s));
            (b, a, 8)
        }
        Source::Recipe(l) => match &l.file.recipe {
            Recipe::Arcs { sets, angles, levels } => (sets.clone(), angles.clone(), levels.unwrap_or(8)),
            other => return Err(InputError(format!("arcs needs an arcs recipe, got {}", other.kind()))),
        },
    };
    let z = zero_set(&sets, &angles)?;
    let mut r = Report::new("arcs");
    let mut t = Table::new("arc sets", vec!["set", "angle", "length", "coboundary_length", "invariant"]);
    let mut rows = Vec::new();
    for (i, (b, a)) in sets.iter().zip(&angles).enumerate() {
        let d = indicator_coboundary(b, a);
        let inv = is_rotation_invariant(b, a);
        t.row(vec![i.to_string(), a.to_string(), b.length().to_string(), d.length().to_string(), inv.invariant.to_string()]);
        rows.push(json!({
            "angle": a,
            "length": b.length(),
            "coboundary": d,
            "invariant": inv.invariant,
            "witness": inv.witness,
        }));
    }
    r.tables.push(t);
    let approx = approximating_lengths(&sets, &angles, levels)?;
    let mut s = Table::new("zero set", vec!["level", "length", "length_float"]);
    s.row(vec!["exact".into(), z.length().to_string(), f(z.length().to_f64())]);
    for (n, a) in approx.iter().enumerate() {
        s.row(vec![n.to_string(), a.to_string(), f(a.to_f64())]);
    }
    r.tables.push(s);
    r.set("sets", Value::Array(rows));
    r.set("zero_set", json!(z));
    r.set("zero_set_length", json!(z.length()));
    r.set("approximating_lengths", json!(approx));
    Ok(r)
}

pub fn kronecker_cmd(src: &Source) -> Input<Report> {
    let (qq, p) = match src {
        Source::Seed(s) => {
            use rand::Rng;
            let mut g = corpus::rng(*s);
            loop {
                let (qq, p) = (g.gen_range(1..=20usize), g.gen_range(0..20i64));
                if num_integer::gcd(qq as i64, p) == 1 {
                    break (qq, p);
                }
            }
        }
        Source::Recipe(l) => match &l.file.recipe {
            Recipe::Kronecker { q, p } => (*q, *p),
            other => return Err(InputError(format!("kronecker needs a kronecker recipe, got {}", other.kind()))),
        },
    };
    let answer = one_is_coboundary(qq, p)?;
    let c = lamcohom::constructions::kronecker(qq, p)?;
    let dims = betti_numbers(&c, CoeffKind::Z2, None)?;
    let mut r = Report::new("kronecker");
    let mut t = Table::new("Kronecker model", vec!["q", "p", "dim_h0_z2", "dim_h1_z2", "one_is_coboundary", "witness"]);
    let witness = match &answer {
        CoboundaryAnswer::Coboundary { f } => f.iter().map(ToString::to_string).collect::<Vec<_>>().join(""),
        CoboundaryAnswer::Obstruction { orbit_sum } => format!("orbit sum {orbit_sum}"),
    };
    t.row(vec![
        qq.to_string(),
        p.to_string(),
        dims[0].to_string(),
        dims.get(1).copied().unwrap_or(0).to_string(),
        answer.is_coboundary().to_string(),
        witness,
    ]);
    r.tables.push(t);
    r.set("q", json!(qq));
    r.set("p", json!(p));
    r.set("dims_z2", json!(dims));
    r.set("answer", serde_json::to_value(&answer).expect("serializes"));
    Ok(r)
}

pub fn source(recipe: Option<&Path>, seed: Option<u64>) -> Input<Source> {
    match (recipe, seed) {
        (Some(p), _) => Ok(Source::Recipe(crate::recipe::load(p)?)),
        (None, Some(s)) => Ok(Source::Seed(s)),
        (None, None) => Err(InputError("give a recipe file or --seed".into())),
    }
}
