//! Command definitions and dispatch.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use multifan_core::algebra::{
    rigidity_experiment, verify_structure, DualityAlgebra, StructureCase,
};
use multifan_core::exactmath::{HomogeneousForm, QVector, Rational, SkewForm};
use multifan_core::polytope::MultiPolytope;
use multifan_core::recognize::{from_poincare_algebra, is_volume_polynomial, reconstruct};
use multifan_core::simplicial::SimplicialComplex;
use multifan_core::volume::{
    derivative, integrate_monomial, recover_lambda, volume_poly_index, volume_poly_lawrence,
    VolumePolynomial,
};
use multifan_core::{fixtures, seeded_rng, DetRng, Error, MultiFan};
use serde_json::{json, Value};

use crate::format::{
    form_text, parse_index_list, parse_rat_list, parse_vector_list, rat, to_wire, vec_wire,
    ChainFile, ComplexFile, FanFile, FormFile, FunctionalFile, FORMAT,
};
use crate::svg;

#[derive(Parser, Debug, Clone)]
#[command(
    name = "multifan",
    version,
    about = "Exact computations with complete simplicial multi-fans"
)]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the primary output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct FanInput {
    /// Multi-fan JSON file.
    #[arg(long, conflicts_with = "fixture")]
    pub fan: Option<PathBuf>,
    /// Built-in fan: cp2, square, octahedron, star, torus, icosahedron, cube4.
    #[arg(long)]
    pub fixture: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct Params {
    /// Support parameters, comma separated (defaults to all ones).
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum RouteArg {
    Index,
    Lawrence,
    Both,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinkowskiMode {
    Facet,
    Cocycle,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Print a fan (typically a fixture) in the wire format.
    Show(FanInput),
    /// Check the star-condition and report ghosts, zero-ness, completeness.
    Validate(FanInput),
    /// Volume polynomial.
    Volume {
        #[command(flatten)]
        input: FanInput,
        #[arg(long, value_enum, default_value_t = RouteArg::Both)]
        route: RouteArg,
    },
    /// Integral of a degree-n monomial over the fundamental class.
    Integrate {
        #[command(flatten)]
        input: FanInput,
        /// Exponent vector, comma separated.
        #[arg(long)]
        exp: String,
    },
    /// Graded dimensions of the duality algebra of a fan or a form.
    Dims {
        #[command(flatten)]
        input: FanInput,
        /// Homogeneous form JSON file instead of a fan.
        #[arg(long)]
        poly: Option<PathBuf>,
    },
    /// Structure-theorem report (spheres and manifolds).
    Structure(FanInput),
    /// f, h, h', h'' vectors and Betti numbers.
    Hvector {
        #[command(flatten)]
        input: FanInput,
        /// Complex JSON file instead of a fan.
        #[arg(long)]
        complex: Option<PathBuf>,
    },
    /// Duistermaat-Heckman function at a point.
    Dh {
        #[command(flatten)]
        input: FanInput,
        #[command(flatten)]
        params: Params,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Generic vector (sampled from the seed when omitted).
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
    },
    /// Vertices of the multi-polytope.
    Vertices {
        #[command(flatten)]
        input: FanInput,
        #[command(flatten)]
        params: Params,
    },
    /// Face of the multi-polytope as a polytope over the projected fan.
    Faces {
        #[command(flatten)]
        input: FanInput,
        #[command(flatten)]
        params: Params,
        /// Face vertices, comma separated.
        #[arg(long)]
        face: String,
    },
    /// Monte-Carlo volume estimate against the exact volume.
    Mcvol {
        #[command(flatten)]
        input: FanInput,
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
    /// Minkowski relations.
    Minkowski {
        #[command(flatten)]
        input: FanInput,
        #[command(flatten)]
        params: Params,
        #[arg(long, value_enum, default_value_t = MinkowskiMode::Facet)]
        mode: MinkowskiMode,
        /// Cochain JSON file (cocycle mode).
        #[arg(long)]
        cochain: Option<PathBuf>,
        /// Vectors whose wedge is the test form, `;`-separated (cocycle mode).
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
    },
    /// Flips: on an (n+1)-set, stellar subdivision of a facet, or removal of
    /// a vertex with simplex-boundary link.
    Flip {
        #[command(flatten)]
        input: FanInput,
        #[arg(long, conflicts_with_all = ["stellar", "unstellar"])]
        set: Option<String>,
        /// Facet to subdivide (requires --vector).
        #[arg(long, requires = "vector")]
        stellar: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        vector: Option<String>,
        #[arg(long)]
        unstellar: Option<usize>,
    },
    /// Connected sum along a common facet.
    Consum {
        #[command(flatten)]
        input: FanInput,
        #[arg(long)]
        other: PathBuf,
        #[arg(long)]
        along: String,
    },
    /// Decide whether a form is a volume polynomial.
    Recognize {
        #[arg(long)]
        poly: PathBuf,
        /// Also emit a witness multi-fan.
        #[arg(long)]
        reconstruct: bool,
    },
    /// Realize a Poincaré duality algebra by a multi-fan.
    FromAlgebra {
        #[arg(long)]
        functional: PathBuf,
    },
    /// Recover characteristic vectors from a volume polynomial.
    RecoverLambda {
        #[arg(long)]
        poly: PathBuf,
        /// Seed facet, comma separated.
        #[arg(long)]
        facet: String,
        /// Seed vectors, `;`-separated.
        #[arg(long, allow_hyphen_values = true)]
        vectors: String,
    },
    /// SVG chart of the DH function (n = 2).
    PlotDh {
        #[command(flatten)]
        input: FanInput,
        #[command(flatten)]
        params: Params,
    },
    /// Dimension vectors over random characteristic functions with fixed
    /// weights.
    ExperimentRigidity {
        #[command(flatten)]
        input: FanInput,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 5)]
        bound: i64,
    },
}

pub fn fixture(name: &str) -> Result<MultiFan, Error> {
    Ok(match name {
        "cp2" => fixtures::cp2(),
        "square" => fixtures::square(),
        "octahedron" => fixtures::octahedron(),
        "star" => fixtures::star(),
        "torus" => fixtures::torus(),
        "cube4" => fixtures::cross_polytope(4),
        "icosahedron" => fixtures::fundamental_fan(
            &fixtures::icosahedron_complex(),
            fixtures::moment_curve(3, 12),
        )?,
        other => return Err(Error::Invalid(format!("unknown fixture {other:?}"))),
    })
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn load_fan(input: &FanInput) -> Result<MultiFan, Error> {
    match (&input.fan, &input.fixture) {
        (Some(p), _) => read_json::<FanFile>(p)?.to_fan(),
        (None, Some(name)) => fixture(name),
        (None, None) => Err(Error::Invalid(
            "one of --fan or --fixture is required".into(),
        )),
    }
}

fn load_form(path: &PathBuf) -> Result<HomogeneousForm, Error> {
    read_json::<FormFile>(path)?.to_form()
}

fn params(p: &Params, fan: &MultiFan) -> Result<QVector, Error> {
    match &p.c {
        Some(s) => parse_rat_list(s),
        None => Ok(vec![Rational::from_integer(1.into()); fan.m()]),
    }
}

fn form_json(f: &HomogeneousForm) -> Value {
    json!({ "form": FormFile::from_form(f), "text": form_text(f) })
}

fn fan_json(f: &MultiFan) -> Value {
    serde_json::to_value(FanFile::from_fan(f)).expect("serializable")
}

fn dims_of(f: &MultiFan, rng: &mut DetRng) -> Result<Vec<usize>, Error> {
    Ok(DualityAlgebra::build(&volume_poly_index(f, rng)?.form)?.dims())
}

fn hilbert(dm: &[usize]) -> String {
    dm.iter()
        .enumerate()
        .filter(|(_, &d)| d > 0)
        .map(|(k, &d)| match (k, d) {
            (0, _) => d.to_string(),
            (1, 1) => "t".into(),
            (1, _) => format!("{d}t"),
            (_, 1) => format!("t^{k}"),
            _ => format!("{d}t^{k}"),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Output of a successful command.
pub enum Output {
    Json(Value),
    Text(String),
}

impl Output {
    pub fn render(&self) -> String {
        match self {
            Output::Json(v) => {
                let mut s = serde_json::to_string_pretty(v).expect("serializable");
                s.push('\n');
                s
            }
            Output::Text(t) => t.clone(),
        }
    }
}

fn with_format(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("format".into(), Value::String(FORMAT.into()));
    }
    v
}

pub fn run(cli: &Cli) -> Result<Output, Error> {
    let mut rng = seeded_rng(cli.seed);
    let rng = &mut rng;
    let v = match &cli.command {
        Command::Show(input) => fan_json(&load_fan(input)?),
        Command::Validate(input) => {
            let f = load_fan(input)?;
            let r = f.validate();
            json!({
                "valid": true,
                "n": f.n(),
                "m": f.m(),
                "facets": r.facet_count,
                "ghost_vertices": to_wire(&r.ghost_vertices),
                "zero": r.is_zero,
                "complete": f.is_complete(),
            })
        }
        Command::Volume { input, route } => {
            let f = load_fan(input)?;
            let index = |rng: &mut DetRng| volume_poly_index(&f, rng);
            let lawrence = |rng: &mut DetRng| -> Result<VolumePolynomial, Error> {
                let v = if f.n() == 0 {
                    Vec::new()
                } else {
                    f.generic_vector(rng)?
                };
                volume_poly_lawrence(&f, &v)
            };
            let gv = |p: &VolumePolynomial| {
                p.generic_vectors
                    .iter()
                    .map(|v| vec_wire(v))
                    .collect::<Vec<_>>()
            };
            match route {
                RouteArg::Index => {
                    let p = index(rng)?;
                    json!({ "route": "index", "polynomial": form_json(&p.form), "generic_vectors": gv(&p) })
                }
                RouteArg::Lawrence => {
                    let p = lawrence(rng)?;
                    json!({ "route": "lawrence", "polynomial": form_json(&p.form), "generic_vectors": gv(&p) })
                }
                RouteArg::Both => {
                    let a = index(rng)?;
                    let b = lawrence(rng)?;
                    let agree = a.form == b.form;
                    if !agree {
                        return Err(Error::Internal("volume routes disagree".into()));
                    }
                    json!({
                        "route": "both",
                        "index": form_json(&a.form),
                        "lawrence": form_json(&b.form),
                        "routes_agree": agree,
                        "generic_vectors": { "index": gv(&a), "lawrence": gv(&b) },
                    })
                }
            }
        }
        Command::Integrate { input, exp } => {
            let f = load_fan(input)?;
            let a: Vec<u32> = exp
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Invalid(format!("bad exponent {t:?}")))
                })
                .collect::<Result<_, _>>()?;
            let x = integrate_monomial(&f, &a, rng)?;
            json!({ "exp": a, "value": rat(&x) })
        }
        Command::Dims { input, poly } => {
            let psi = match poly {
                Some(p) => load_form(p)?,
                None => volume_poly_index(&load_fan(input)?, rng)?.form,
            };
            let alg = DualityAlgebra::build(&psi)?;
            let dm = alg.dims();
            let n = alg.n();
            let symmetric = dm.iter().eq(dm.iter().rev());
            let pairing = (0..=n).all(|k| alg.pairing_matrix(k).rank() == dm[k]);
            json!({
                "dm": dm,
                "hilbert": hilbert(&dm),
                "checks": { "poincare": pairing, "symmetric": symmetric, "extremes_one": dm[0] == 1 && dm[n] == 1 },
            })
        }
        Command::Structure(input) => {
            let f = load_fan(input)?;
            let r = verify_structure(&f, rng)?;
            let case = match r.case {
                StructureCase::Sphere => "sphere",
                StructureCase::Manifold => "manifold",
                StructureCase::Unclassified => "unclassified",
            };
            let verified = r.verified();
            if !verified {
                return Err(Error::Internal(format!(
                    "structure theorem check failed: {:?}",
                    r.checks
                )));
            }
            json!({
                "case": case,
                "dm": r.dm,
                "h": r.profile.h_vector,
                "h_prime": r.profile.h_prime,
                "h_double_prime": r.profile.h_double_prime,
                "sr_dims": r.sr_dims,
                "reduced_betti": r.profile.reduced_betti,
                "socle_defects": r.socle_defects.iter().map(|(a, _)| *a).collect::<Vec<_>>(),
                "expected_defects": r.socle_defects.iter().map(|(_, b)| *b).collect::<Vec<_>>(),
                "checks": r.checks.iter().map(|(k, ok)| (k.clone(), Value::Bool(*ok))).collect::<serde_json::Map<_, _>>(),
                "verified": verified,
                "note": if r.case == StructureCase::Unclassified { "no structure theorem applies; data only" } else { "" },
            })
        }
        Command::Hvector { input, complex } => {
            let k: SimplicialComplex = match complex {
                Some(p) => read_json::<ComplexFile>(p)?.to_complex()?,
                None => load_fan(input)?.complex(),
            };
            let p = k.profile()?;
            let c = k.classify();
            json!({
                "complex": ComplexFile::from_complex(&k),
                "f": p.f_vector,
                "h": p.h_vector,
                "h_prime": p.h_prime,
                "h_double_prime": p.h_double_prime,
                "reduced_betti": p.reduced_betti,
                "pseudomanifold": c.is_pseudomanifold,
                "orientable": c.is_orientable,
                "gorenstein_star": c.is_gorenstein_star,
                "homology_manifold": c.is_homology_manifold,
            })
        }
        Command::Dh {
            input,
            params: pa,
            point,
            v,
        } => {
            let f = load_fan(input)?;
            let c = params(pa, &f)?;
            let p = MultiPolytope::new(f, c)?;
            let u = parse_rat_list(point)?;
            let v = match v {
                Some(s) => parse_rat_list(s)?,
                None => p.fan.generic_vector(rng)?,
            };
            let d = p.dh_eval(&u, &v)?;
            json!({
                "point": vec_wire(&d.point),
                "value": rat(&d.value),
                "generic_vector": vec_wire(&v),
                "certificate": d.certificate.iter().map(|t| json!({
                    "facet": to_wire(&t.facet), "sign": t.sign, "member": t.member,
                })).collect::<Vec<_>>(),
            })
        }
        Command::Vertices { input, params: pa } => {
            let f = load_fan(input)?;
            let c = params(pa, &f)?;
            let p = MultiPolytope::new(f, c)?;
            let vs = p.vertices()?;
            json!({
                "c": vec_wire(&p.c),
                "vertices": vs.iter().map(|(s, u)| json!({ "facet": to_wire(s), "vertex": vec_wire(u) })).collect::<Vec<_>>(),
            })
        }
        Command::Faces {
            input,
            params: pa,
            face,
        } => {
            let f = load_fan(input)?;
            let c = params(pa, &f)?;
            let j = parse_index_list(face)?;
            let p = MultiPolytope::new(f, c)?;
            let (proj, fp) = p.face(&j)?;
            let via_projection = p.normalized_face_volume_projected(&j, rng)?;
            let vol = volume_poly_index(&p.fan, rng)?.form;
            let direct = derivative(&vol, &j).evaluate(&p.c);
            if via_projection != direct {
                return Err(Error::Internal("face volume routes disagree".into()));
            }
            json!({
                "face": to_wire(&proj.simplex),
                "fan": fan_json(&fp.fan),
                "c": vec_wire(&fp.c),
                "frame": proj.frame.to_rows().iter().map(|r| vec_wire(r)).collect::<Vec<_>>(),
                "normalized_volume": rat(&direct),
                "covolume_squared": rat(&p.fan.covolume_squared(&proj.simplex)),
            })
        }
        Command::Mcvol {
            input,
            params: pa,
            samples,
        } => {
            let f = load_fan(input)?;
            let c = params(pa, &f)?;
            let p = MultiPolytope::new(f, c)?;
            let exact = volume_poly_index(&p.fan, rng)?.form.evaluate(&p.c);
            let (est, se) = p.mc_volume(*samples, rng)?;
            let ex = multifan_core::exactmath::to_f64(&exact);
            json!({
                "estimate": est,
                "stderr": se,
                "exact": rat(&exact),
                "samples": samples,
                "within_3_stderr": (est - ex).abs() <= 3.0 * se,
            })
        }
        Command::Minkowski {
            input,
            params: pa,
            mode,
            cochain,
            mu,
        } => {
            let f = load_fan(input)?;
            let c = params(pa, &f)?;
            let p = MultiPolytope::new(f, c)?;
            let vol = volume_poly_index(&p.fan, rng)?.form;
            match mode {
                MinkowskiMode::Facet => {
                    let r = p.minkowski_facet_residual(&vol);
                    json!({ "mode": "facet", "residual": vec_wire(&r), "zero": r.iter().all(|x| *x == Rational::from_integer(0.into())) })
                }
                MinkowskiMode::Cocycle => {
                    let a = match cochain {
                        Some(path) => read_json::<ChainFile>(path)?.to_chain()?,
                        None => {
                            return Err(Error::Invalid(
                                "--cochain is required in cocycle mode".into(),
                            ))
                        }
                    };
                    let vecs = parse_vector_list(
                        mu.as_deref()
                            .ok_or_else(|| Error::Invalid("--mu is required".into()))?,
                    )?;
                    let mu = SkewForm::wedge(p.fan.n(), &vecs)?;
                    let op = multifan_core::polytope::minkowski_operator(&p.fan, &a, &mu)?;
                    let r = op.apply(&vol).evaluate(&p.c);
                    let annihilates = op.apply(&vol).is_zero();
                    json!({
                        "mode": "cocycle",
                        "residual": rat(&r),
                        "operator": form_json(&op.0),
                        "annihilates_volume": annihilates,
                    })
                }
            }
        }
        Command::Flip {
            input,
            set,
            stellar,
            vector,
            unstellar,
        } => {
            let f = load_fan(input)?;
            let r = if let Some(s) = set {
                f.flip(&parse_index_list(s)?)?
            } else if let Some(s) = stellar {
                let v = parse_rat_list(vector.as_deref().unwrap_or(""))?;
                f.flip_stellar(&parse_index_list(s)?, v)?
            } else if let Some(v) = unstellar {
                if *v == 0 {
                    return Err(Error::Invalid("vertex indices are 1-based".into()));
                }
                f.flip_unstellar(v - 1)?
            } else {
                return Err(Error::Invalid(
                    "one of --set, --stellar, --unstellar is required".into(),
                ));
            };
            let before = dims_of(&f, rng)?;
            let after = dims_of(&r.fan, rng)?;
            let n = f.n();
            let expected: Vec<i64> = (0..=n)
                .map(|k| i64::from(k < r.q) - i64::from(k < r.p))
                .collect();
            let change: Vec<i64> = (0..=n)
                .map(|k| after[k] as i64 - before[k] as i64)
                .collect();
            json!({
                "type": [r.p, r.q],
                "fan": fan_json(&r.fan),
                "complete": r.fan.is_complete(),
                "dm_before": before,
                "dm_after": after,
                "dm_change": change,
                "dm_change_expected": expected,
                "agrees": change == expected,
            })
        }
        Command::Consum {
            input,
            other,
            along,
        } => {
            let a = load_fan(input)?;
            let b = read_json::<FanFile>(other)?.to_fan()?;
            let s = parse_index_list(along)?;
            let sum = a.connected_sum(&b, &s)?;
            let (da, db, ds) = (dims_of(&a, rng)?, dims_of(&b, rng)?, dims_of(&sum, rng)?);
            let n = a.n();
            let expected: Vec<i64> = (0..=n)
                .map(|k| da[k] as i64 + db[k] as i64 - i64::from(k == 0 || k == n))
                .collect();
            json!({
                "fan": fan_json(&sum),
                "complete": sum.is_complete(),
                "dm": ds,
                "dm_expected": expected,
                "agrees": ds.iter().map(|&x| x as i64).collect::<Vec<_>>() == expected,
            })
        }
        Command::Recognize {
            poly,
            reconstruct: rec,
        } => {
            let psi = load_form(poly)?;
            let verdict = is_volume_polynomial(&psi)?;
            let mut out = json!({
                "is_volume_polynomial": verdict.is_volume_polynomial,
                "n": verdict.n,
                "ann_square_dim": verdict.ann_dim,
                "dep_sets": verdict.dep_sets.iter().map(|s| to_wire(s)).collect::<Vec<_>>(),
                "violations": verdict.violations.iter().map(|s| to_wire(s)).collect::<Vec<_>>(),
                "reason": verdict.reason,
            });
            if *rec && verdict.is_volume_polynomial {
                let r = reconstruct(&psi, rng)?;
                out["witness"] = fan_json(&r.fan);
                out["solution_space_dim"] = json!(r.solution_dim);
            }
            out
        }
        Command::FromAlgebra { functional } => {
            let fnl = read_json::<FunctionalFile>(functional)?.to_functional()?;
            let r = from_poincare_algebra(&fnl, rng)?;
            json!({
                "fan": fan_json(&r.fan),
                "source_dm": r.source_dims,
                "fan_dm": r.fan_dims,
                "pairing_ranks_equal": r.pairing_ranks_equal,
                "isomorphic_dims": r.source_dims == r.fan_dims,
                "solution_space_dim": r.solution_dim,
            })
        }
        Command::RecoverLambda {
            poly,
            facet,
            vectors,
        } => {
            let psi = load_form(poly)?;
            let seed = parse_index_list(facet)?;
            let vecs = parse_vector_list(vectors)?;
            let f = recover_lambda(&psi, &seed, &vecs, rng)?;
            json!({ "fan": fan_json(&f), "volume_matches": true })
        }
        Command::PlotDh { input, params: pa } => {
            let f = load_fan(input)?;
            let c = params(pa, &f)?;
            let p = MultiPolytope::new(f, c)?;
            if p.fan.n() != 2 {
                return Err(Error::Dimension("plot-dh needs n = 2".into()));
            }
            let v = p.fan.generic_vector(rng)?;
            return Ok(Output::Text(svg::render(&p, &v)?));
        }
        Command::ExperimentRigidity {
            input,
            samples,
            bound,
        } => {
            let f = load_fan(input)?;
            f.require_complete()?;
            let tally = rigidity_experiment(&f, *samples, *bound, rng)?;
            let spectrum: BTreeMap<String, usize> = tally
                .iter()
                .map(|(dm, k)| (format!("{dm:?}"), *k))
                .collect();
            json!({
                "samples": samples,
                "spectrum": spectrum,
                "distinct": tally.len(),
                "note": "experiment only; no claim is made about dependence on the characteristic function",
            })
        }
    };
    Ok(Output::Json(with_format(v)))
}

/// Exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_internal() {
        4
    } else if e.is_validation() {
        2
    } else {
        3
    }
}

pub fn error_json(e: &Error) -> Value {
    let kind = match e {
        Error::Dimension(_) => "dimension",
        Error::StarCondition { .. } => "star_condition",
        Error::Invalid(_) => "invalid",
        Error::Incomplete => "incomplete",
        Error::NotGeneric { .. } => "not_generic",
        Error::OnHyperplane(_) => "on_hyperplane",
        Error::GenericSearchExhausted(_) => "generic_search_exhausted",
        Error::Precondition(_) => "precondition",
        Error::NotInComplex(_) => "not_in_complex",
        Error::ZeroPolynomial => "zero_polynomial",
        Error::Internal(_) => "internal",
    };
    let mut v = json!({ "format": FORMAT, "error": { "kind": kind, "message": e.to_string() } });
    match e {
        Error::StarCondition { offending } => {
            v["error"]["offending"] =
                json!(offending.iter().map(|s| to_wire(s)).collect::<Vec<_>>());
        }
        Error::NotGeneric { simplex } | Error::NotInComplex(simplex) => {
            v["error"]["simplex"] = json!(to_wire(simplex));
        }
        Error::OnHyperplane(i) => v["error"]["hyperplane"] = json!(i + 1),
        _ => {}
    }
    v
}
