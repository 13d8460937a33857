//! Job runner behind the `tps` binary: reads a request document, runs one
//! library operation, and returns the result document.

pub mod codec;
mod error;

use serde_json::{Map, Value};
use tps_core::{
    commutant, entanglement_entropy, example_d4, generated_algebra, pauli_decompose, schmidt_decompose,
    spin_matrices, tailor_bipartite, tailor_multipartite, verify_zanardi, ComplexMatrix, Factorization,
    DEFAULT_TOL,
};

pub use error::CliError;

use codec::{as_object, field, join, read_complex_list, read_matrix, read_matrix_list, read_state, read_usize, read_usize_list};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Command {
    Spin,
    Closure,
    Commutant,
    Schmidt,
    Tailor,
    TailorMulti,
    Verify,
    ExampleD4 { lambda1: f64 },
    Pauli,
}

impl Command {
    /// `kind` of the request document this command reads.
    pub fn request_kind(&self) -> Option<&'static str> {
        Some(match self {
            Command::Spin => "spin",
            Command::Closure => "closure",
            Command::Commutant => "commutant",
            Command::Schmidt => "schmidt",
            Command::Tailor => "tailor",
            Command::TailorMulti => "tailor-multi",
            Command::Verify => "verify",
            Command::Pauli => "pauli",
            Command::ExampleD4 { .. } => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JobSpec {
    pub command: Command,
    pub input_path: Option<String>,
    pub output_path: Option<String>,
    pub tol: f64,
    pub pretty: bool,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        Self { command, input_path: None, output_path: None, tol: DEFAULT_TOL, pretty: false }
    }

    /// Checks everything that does not need the input document.
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(CliError::usage(format!("--tol must be a positive finite number, got {}", self.tol)));
        }
        if let Command::ExampleD4 { lambda1 } = self.command {
            if !lambda1.is_finite() || lambda1.abs() > 1.0 {
                return Err(CliError::usage(format!("lambda1 must lie in [-1, 1], got {lambda1}")));
            }
        }
        Ok(())
    }
}

/// Runs a job on an already-read request (ignored for `example-d4`) and returns the result document.
pub fn run(spec: &JobSpec, input: Option<&str>) -> Result<Value, CliError> {
    spec.validate()?;
    let tol = spec.tol;

    let request = match spec.command.request_kind() {
        Some(kind) => {
            let text = input.ok_or_else(|| CliError::usage("no input document"))?;
            let doc = codec::parse(text)?;
            let obj = as_object(&doc, "")?.clone();
            codec::expect_kind(&obj, kind, "", true)?;
            obj
        }
        None => Map::new(),
    };

    match spec.command {
        Command::Spin => {
            let dim = read_usize(field(&request, "dim", "")?, "dim")?;
            let rep = spin_matrices(dim).map_err(core("dim"))?;
            Ok(codec::document(
                "spin-result",
                vec![
                    ("dim", Value::from(dim)),
                    ("spin_twice", Value::from(rep.spin_twice())),
                    ("s_x", codec::matrix(&rep.s_x)?),
                    ("s_y", codec::matrix(&rep.s_y)?),
                    ("s_z", codec::matrix(&rep.s_z)?),
                    ("s_plus", codec::matrix(&rep.s_plus)?),
                    ("s_minus", codec::matrix(&rep.s_minus)?),
                ],
            ))
        }
        Command::Closure | Command::Commutant => {
            let (generators, d) = read_generators(&request, "generators", "")?;
            let algebra = generated_algebra(&generators, d, tol).map_err(core("generators"))?;
            if spec.command == Command::Closure {
                return Ok(codec::document(
                    "closure-result",
                    vec![("dimension", Value::from(algebra.dim())), ("basis", codec::matrices(algebra.basis())?)],
                ));
            }
            let prime = commutant(&algebra);
            Ok(codec::document(
                "commutant-result",
                vec![
                    ("algebra_dimension", Value::from(algebra.dim())),
                    ("dimension", Value::from(prime.dim())),
                    ("basis", codec::matrices(prime.basis())?),
                ],
            ))
        }
        Command::Schmidt => {
            let psi = read_state(field(&request, "state", "")?, "state")?;
            let (k, l) = read_bipartition(&request)?;
            let s = schmidt_decompose(&psi, k, l).map_err(core("factors"))?;
            let entropy = match entanglement_entropy(&s) {
                Ok(h) => codec::float(h)?,
                Err(_) => Value::Null,
            };
            let left = s.left_basis.iter().map(codec::state).collect::<Result<Vec<_>, _>>()?;
            let right = s.right_basis.iter().map(codec::state).collect::<Result<Vec<_>, _>>()?;
            Ok(codec::document(
                "schmidt-result",
                vec![
                    ("coefficients", codec::float_list(&s.coefficients)?),
                    ("entropy", entropy),
                    ("left_basis", Value::Array(left)),
                    ("right_basis", Value::Array(right)),
                ],
            ))
        }
        Command::Tailor => {
            let psi = read_state(field(&request, "state", "")?, "state")?;
            let (k, l) = read_bipartition(&request)?;
            let lambdas = read_complex_list(field(&request, "lambdas", "")?, "lambdas")?;
            if lambdas.len() != k.min(l) {
                return Err(CliError::dimension(
                    "lambdas",
                    &format!("{} weights supplied, factors need {}", lambdas.len(), k.min(l)),
                ));
            }
            if psi.dim() != k * l {
                return Err(CliError::dimension(
                    "factors",
                    &format!("{k} x {l} does not match state dimension {}", psi.dim()),
                ));
            }
            let tps = tailor_bipartite(&psi, k, l, &lambdas, tol).map_err(core("lambdas"))?;
            let pulled = tps.pull_back(&psi).map_err(core("state"))?;
            let coefficients = schmidt_decompose(&pulled, k, l).map_err(core("factors"))?.coefficients;
            let generators = codec::object(vec![
                ("A", codec::matrices(&tps.generator_sets[0])?),
                ("B", codec::matrices(&tps.generator_sets[1])?),
            ]);
            Ok(codec::document(
                "tailor-result",
                vec![
                    ("u", codec::matrix(&tps.u)?),
                    ("generators", generators),
                    ("schmidt_coefficients", codec::float_list(&coefficients)?),
                    ("report", codec::report(&tps.report)?),
                ],
            ))
        }
        Command::TailorMulti => {
            let psi = read_state(field(&request, "state", "")?, "state")?;
            let dims = read_usize_list(field(&request, "factors", "")?, "factors")?;
            let factorization = Factorization::new(dims).map_err(core("factors"))?;
            let coeffs = read_complex_list(field(&request, "coefficients", "")?, "coefficients")?;
            if coeffs.len() != factorization.total() {
                return Err(CliError::dimension(
                    "coefficients",
                    &format!("{} coefficients, factors need {}", coeffs.len(), factorization.total()),
                ));
            }
            if psi.dim() != factorization.total() {
                return Err(CliError::dimension(
                    "factors",
                    &format!("factors multiply to {}, state has dimension {}", factorization.total(), psi.dim()),
                ));
            }
            let tps = tailor_multipartite(&psi, &factorization, &coeffs, tol).map_err(core("coefficients"))?;
            let pulled = tps.pull_back(&psi).map_err(core("state"))?;
            let generators = tps
                .generator_sets
                .iter()
                .map(|set| codec::matrices(set))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(codec::document(
                "tailor-multi-result",
                vec![
                    ("u", codec::matrix(&tps.u)?),
                    ("generators", Value::Array(generators)),
                    ("coefficients", codec::complex_list(pulled.amplitudes())?),
                    ("report", codec::report(&tps.report)?),
                ],
            ))
        }
        Command::Verify => {
            let lists = codec::as_array(field(&request, "algebras", "")?, "algebras")?;
            if lists.len() < 2 {
                return Err(CliError::schema("algebras", "need at least two algebras"));
            }
            let mut d = None;
            let mut algebras = Vec::with_capacity(lists.len());
            for (i, list) in lists.iter().enumerate() {
                let path = codec::index("algebras", i);
                let gens = read_matrix_list(list, &path)?;
                let first = gens.first().ok_or_else(|| CliError::schema(&path, "generator list is empty"))?;
                let this_d = square_dim(first, &codec::index(&path, 0))?;
                if *d.get_or_insert(this_d) != this_d {
                    return Err(CliError::dimension(&path, "algebras act on different dimensions"));
                }
                algebras.push(generated_algebra(&gens, this_d, tol).map_err(core(path.as_str()))?);
            }
            let d = d.expect("at least two algebras");
            let report = verify_zanardi(&algebras, d, tol).map_err(core("algebras"))?;
            let dims: Vec<Value> = algebras.iter().map(|a| Value::from(a.dim())).collect();
            Ok(codec::document(
                "verify-result",
                vec![("dims", Value::Array(dims)), ("report", codec::report(&report)?)],
            ))
        }
        Command::ExampleD4 { lambda1 } => {
            let lambda2 = (1.0 - lambda1 * lambda1).max(0.0).sqrt();
            let ex = example_d4(lambda1, lambda2).map_err(core("lambda1"))?;
            let side = |maps: &[tps_core::PauliMap; 3]| -> Result<Value, CliError> {
                Ok(codec::object(vec![
                    ("x", codec::pauli_map(&maps[0])?),
                    ("y", codec::pauli_map(&maps[1])?),
                    ("z", codec::pauli_map(&maps[2])?),
                ]))
            };
            Ok(codec::document(
                "example-d4-result",
                vec![
                    ("lambda1", codec::float(lambda1)?),
                    ("lambda2", codec::float(lambda2)?),
                    ("u", codec::matrix(&ex.u)?),
                    ("decompositions", codec::object(vec![("A", side(&ex.a_side)?), ("B", side(&ex.b_side)?)])),
                ],
            ))
        }
        Command::Pauli => {
            let op = read_matrix(field(&request, "operator", "")?, "operator")?;
            let n = op.rows().trailing_zeros() as usize;
            if !op.is_square() || !op.rows().is_power_of_two() || n == 0 {
                return Err(CliError::dimension("operator", "operator must be 2^n x 2^n with n >= 1"));
            }
            let map = pauli_decompose(&op, n).map_err(core("operator"))?;
            Ok(codec::document(
                "pauli-result",
                vec![("qubits", Value::from(n)), ("coefficients", codec::pauli_map(&map)?)],
            ))
        }
    }
}

fn square_dim(m: &ComplexMatrix, path: &str) -> Result<usize, CliError> {
    if !m.is_square() {
        return Err(CliError::dimension(path, "operator must be square"));
    }
    Ok(m.rows())
}

/// Generators plus the ambient dimension, taken from the first generator or an explicit `dim`.
fn read_generators(
    request: &Map<String, Value>,
    key: &str,
    path: &str,
) -> Result<(Vec<ComplexMatrix>, usize), CliError> {
    let gens_path = join(path, key);
    let gens = read_matrix_list(field(request, key, path)?, &gens_path)?;
    let explicit = request.get("dim").map(|v| read_usize(v, &join(path, "dim"))).transpose()?;
    let d = match (gens.first(), explicit) {
        (Some(g), _) => square_dim(g, &codec::index(&gens_path, 0))?,
        (None, Some(d)) if d > 0 => d,
        _ => return Err(CliError::schema(&gens_path, "no generators and no positive dim")),
    };
    if let Some(bad) = gens.iter().position(|g| g.shape() != (d, d)) {
        return Err(CliError::dimension(&codec::index(&gens_path, bad), &format!("expected {d}x{d}")));
    }
    if explicit.is_some_and(|e| e != d) {
        return Err(CliError::dimension(&join(path, "dim"), "dim disagrees with the generators"));
    }
    Ok((gens, d))
}

fn read_bipartition(request: &Map<String, Value>) -> Result<(usize, usize), CliError> {
    let dims = read_usize_list(field(request, "factors", "")?, "factors")?;
    match dims.as_slice() {
        &[k, l] if k >= 1 && l >= 1 => Ok((k, l)),
        _ => Err(CliError::schema("factors", "expected two positive factor dimensions [k, l]")),
    }
}

fn core(path: &str) -> impl Fn(tps_core::Error) -> CliError + '_ {
    move |e| CliError::from_core(e, path)
}
