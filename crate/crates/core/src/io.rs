//! Canonical JSON files for monads, ADHM data and extension data.
//!
//! Every file is one compact JSON object followed by a newline, keys in a
//! fixed order and scalars as canonical strings, so parsing and writing
//! again reproduces the input byte for byte exactly when it was canonical.

use serde::{Deserialize, Serialize};

use crate::adhm::{AdhmData, AdhmError};
use crate::algebra::{AlgebraError, Field, FieldTag, GaussianRationals, Matrix, PrimeField, Rationals};
use crate::forms::{AmbientSpace, FormMatrix};
use crate::hirzebruch::{ExtensionData, HirzebruchError};
use crate::monad::{Monad, MonadError};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum IoError {
    #[error("malformed JSON at line {line}, column {column}: {msg}")]
    Json { line: usize, column: usize, msg: String },
    #[error("{path}: {source}")]
    Entry { path: String, source: AlgebraError },
    #[error("{0}")]
    Shape(String),
    #[error("expected field {expected}, found {found}")]
    FieldMismatch { expected: String, found: String },
    #[error(transparent)]
    Field(#[from] AlgebraError),
    #[error(transparent)]
    Monad(#[from] MonadError),
    #[error(transparent)]
    Adhm(#[from] AdhmError),
    #[error(transparent)]
    Hirzebruch(#[from] HirzebruchError),
    #[error("unrecognized file: {0}")]
    UnknownKind(String),
}

fn json_error(e: serde_json::Error) -> IoError {
    IoError::Json {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    }
}

fn canonical<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("plain data serializes");
    s.push('\n');
    s
}

fn parse_entry<F: Field>(field: &F, s: &str, path: impl FnOnce() -> String) -> Result<F::Elem, IoError> {
    field.parse(s).map_err(|source| IoError::Entry { path: path(), source })
}

fn matrix_strings<F: Field>(a: &Matrix<F>) -> Vec<Vec<String>> {
    let f = a.field();
    a.to_rows()
        .iter()
        .map(|row| row.iter().map(|x| f.format(x)).collect())
        .collect()
}

fn parse_matrix<F: Field>(
    field: &F,
    rows: &[Vec<String>],
    shape: (usize, usize),
    path: &str,
) -> Result<Matrix<F>, IoError> {
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return Err(IoError::Shape(format!(
            "{path}: expected a {}x{} matrix",
            shape.0, shape.1
        )));
    }
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let mut parsed = Vec::with_capacity(row.len());
        for (j, s) in row.iter().enumerate() {
            parsed.push(parse_entry(field, s, || format!("{path}[{i}][{j}]"))?);
        }
        out.push(parsed);
    }
    Ok(Matrix::from_rows(field, out)?)
}

fn check_field<F: Field>(field: &F, found: &str) -> Result<(), IoError> {
    let expected = field.tag().to_string();
    if expected != found {
        return Err(IoError::FieldMismatch {
            expected,
            found: found.to_string(),
        });
    }
    Ok(())
}

// ---------------------------------------------------------------- monads

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MonadFile {
    field: String,
    r: usize,
    n: usize,
    /// `[row][col][variable]`.
    epsilon: Vec<Vec<Vec<String>>>,
    q: Vec<Vec<Vec<String>>>,
}

fn form_matrix_strings<F: Field>(a: &FormMatrix<F>) -> Vec<Vec<Vec<String>>> {
    let f = a.field();
    (0..a.rows())
        .map(|i| {
            (0..a.cols())
                .map(|j| {
                    let c = a.get(i, j).linear_coeffs().expect("monad entries are linear");
                    c.iter().map(|x| f.format(x)).collect()
                })
                .collect()
        })
        .collect()
}

pub fn monad_to_json<F: Field>(m: &Monad<F>) -> String {
    canonical(&MonadFile {
        field: m.field().tag().to_string(),
        r: m.rank(),
        n: m.charge(),
        epsilon: form_matrix_strings(m.epsilon()),
        q: form_matrix_strings(m.q()),
    })
}

/// Coefficient matrices, one per variable, of a `rows × cols` matrix of
/// linear forms.
fn parse_linear<F: Field>(
    field: &F,
    data: &[Vec<Vec<String>>],
    shape: (usize, usize),
    path: &str,
) -> Result<(AmbientSpace, Vec<Matrix<F>>), IoError> {
    let nvars = data.first().and_then(|r| r.first()).map(|c| c.len()).unwrap_or(0);
    let space = match nvars {
        4 => AmbientSpace::P3,
        3 => AmbientSpace::P2,
        k => {
            return Err(IoError::Shape(format!(
                "{path}: {k} coefficients per entry; expected 4 or 3"
            )))
        }
    };
    if data.len() != shape.0
        || data
            .iter()
            .any(|r| r.len() != shape.1 || r.iter().any(|c| c.len() != nvars))
    {
        return Err(IoError::Shape(format!(
            "{path}: expected {}x{} entries with {nvars} coefficients each",
            shape.0, shape.1
        )));
    }
    let mut coeffs = vec![Matrix::zeros(field, shape.0, shape.1); nvars];
    for (i, row) in data.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            for (k, s) in entry.iter().enumerate() {
                coeffs[k].set(i, j, parse_entry(field, s, || format!("{path}[{i}][{j}][{k}]"))?);
            }
        }
    }
    Ok((space, coeffs))
}

fn monad_from_file<F: Field>(field: &F, file: &MonadFile) -> Result<Monad<F>, IoError> {
    check_field(field, &file.field)?;
    let m = file.r + 2 * file.n;
    let (space, e) = parse_linear(field, &file.epsilon, (m, file.n), "epsilon")?;
    let (space_q, q) = parse_linear(field, &file.q, (file.n, m), "q")?;
    if space != space_q {
        return Err(IoError::Shape("epsilon and q live on different spaces".into()));
    }
    let e = FormMatrix::linear(field, space, &e).map_err(MonadError::from)?;
    let q = FormMatrix::linear(field, space, &q).map_err(MonadError::from)?;
    Ok(Monad::general(e, q)?)
}

/// A monad over whichever field the file names.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMonad {
    Q(Monad<Rationals>),
    Qi(Monad<GaussianRationals>),
    Fp(Monad<PrimeField>),
}

/// Runs a generic expression on the monad inside an [`AnyMonad`].
#[macro_export]
macro_rules! with_monad {
    ($any:expr, $m:ident => $body:expr) => {
        match $any {
            $crate::io::AnyMonad::Q($m) => $body,
            $crate::io::AnyMonad::Qi($m) => $body,
            $crate::io::AnyMonad::Fp($m) => $body,
        }
    };
}

impl AnyMonad {
    pub fn to_json(&self) -> String {
        with_monad!(self, m => monad_to_json(m))
    }

    pub fn field_tag(&self) -> FieldTag {
        with_monad!(self, m => m.field().tag())
    }
}

fn parse_file<'a, T: Deserialize<'a>>(s: &'a str) -> Result<T, IoError> {
    serde_json::from_str(s).map_err(json_error)
}

pub fn monad_from_json(s: &str) -> Result<AnyMonad, IoError> {
    let file: MonadFile = parse_file(s)?;
    Ok(match FieldTag::parse(&file.field)? {
        FieldTag::Rationals => AnyMonad::Q(monad_from_file(&Rationals, &file)?),
        FieldTag::GaussianRationals => AnyMonad::Qi(monad_from_file(&GaussianRationals, &file)?),
        FieldTag::Prime(p) => AnyMonad::Fp(monad_from_file(&PrimeField::new(p)?, &file)?),
    })
}

/// A monad over a field known in advance.
pub fn monad_from_json_in<F: Field>(field: &F, s: &str) -> Result<Monad<F>, IoError> {
    monad_from_file(field, &parse_file(s)?)
}

// ---------------------------------------------------------------- ADHM data

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AdhmFile {
    field: String,
    r: usize,
    n: usize,
    left: Vec<Vec<Vec<String>>>,
    right: Vec<Vec<Vec<String>>>,
}

pub fn adhm_to_json(d: &AdhmData) -> String {
    canonical(&AdhmFile {
        field: FieldTag::GaussianRationals.to_string(),
        r: d.rank(),
        n: d.charge(),
        left: d.left().iter().map(matrix_strings).collect(),
        right: d.right().iter().map(matrix_strings).collect(),
    })
}

pub fn adhm_from_json(s: &str) -> Result<AdhmData, IoError> {
    let file: AdhmFile = parse_file(s)?;
    let f = GaussianRationals;
    check_field(&f, &file.field)?;
    let m = file.r + 2 * file.n;
    if file.left.len() != 4 || file.right.len() != 4 {
        return Err(IoError::Shape("expected four matrices per side".into()));
    }
    let left = (0..4)
        .map(|j| parse_matrix(&f, &file.left[j], (m, file.n), &format!("left[{j}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let right = (0..4)
        .map(|j| parse_matrix(&f, &file.right[j], (file.n, m), &format!("right[{j}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AdhmData::new(file.r, file.n, left, right)?)
}

// ---------------------------------------------------------------- extension data

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExtensionFile {
    field: String,
    m: usize,
    r: usize,
    points: Vec<String>,
    left: Vec<Vec<String>>,
    right: Vec<Vec<String>>,
}

pub fn extension_to_json<F: Field>(e: &ExtensionData<F>) -> String {
    let f = e.field();
    canonical(&ExtensionFile {
        field: f.tag().to_string(),
        m: e.m(),
        r: e.r(),
        points: e.points().iter().map(|x| f.format(x)).collect(),
        left: matrix_strings(e.left()),
        right: matrix_strings(e.right()),
    })
}

fn extension_from_file<F: Field>(field: &F, file: &ExtensionFile) -> Result<ExtensionData<F>, IoError> {
    check_field(field, &file.field)?;
    if file.points.len() != file.m {
        return Err(IoError::Shape(format!(
            "expected {} points, found {}",
            file.m,
            file.points.len()
        )));
    }
    let points = file
        .points
        .iter()
        .enumerate()
        .map(|(i, s)| parse_entry(field, s, || format!("points[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let left = parse_matrix(field, &file.left, (file.r, file.m), "left")?;
    let right = parse_matrix(field, &file.right, (file.r, file.m), "right")?;
    Ok(ExtensionData::new(field, points, left, right)?)
}

pub fn extension_from_json_in<F: Field>(field: &F, s: &str) -> Result<ExtensionData<F>, IoError> {
    extension_from_file(field, &parse_file(s)?)
}

#[derive(Clone, Debug, PartialEq)]
pub enum AnyExtension {
    Q(ExtensionData<Rationals>),
    Qi(ExtensionData<GaussianRationals>),
    Fp(ExtensionData<PrimeField>),
}

impl AnyExtension {
    pub fn to_json(&self) -> String {
        match self {
            AnyExtension::Q(e) => extension_to_json(e),
            AnyExtension::Qi(e) => extension_to_json(e),
            AnyExtension::Fp(e) => extension_to_json(e),
        }
    }
}

pub fn extension_from_json(s: &str) -> Result<AnyExtension, IoError> {
    let file: ExtensionFile = parse_file(s)?;
    Ok(match FieldTag::parse(&file.field)? {
        FieldTag::Rationals => AnyExtension::Q(extension_from_file(&Rationals, &file)?),
        FieldTag::GaussianRationals => AnyExtension::Qi(extension_from_file(&GaussianRationals, &file)?),
        FieldTag::Prime(p) => AnyExtension::Fp(extension_from_file(&PrimeField::new(p)?, &file)?),
    })
}

// ---------------------------------------------------------------- any file

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileKind {
    Monad,
    Adhm,
    Extension,
}

/// Decides the kind by the keys present.
pub fn file_kind(s: &str) -> Result<FileKind, IoError> {
    let v: serde_json::Value = parse_file(s)?;
    let has = |k: &str| v.get(k).is_some();
    if has("epsilon") {
        Ok(FileKind::Monad)
    } else if has("points") {
        Ok(FileKind::Extension)
    } else if has("left") {
        Ok(FileKind::Adhm)
    } else {
        Err(IoError::UnknownKind("expected a monad, ADHM or extension file".into()))
    }
}

/// Parses and writes back; true iff the bytes are unchanged.
pub fn roundtrip(s: &str) -> Result<bool, IoError> {
    let again = match file_kind(s)? {
        FileKind::Monad => monad_from_json(s)?.to_json(),
        FileKind::Adhm => adhm_to_json(&adhm_from_json(s)?),
        FileKind::Extension => extension_from_json(s)?.to_json(),
    };
    Ok(again == s)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::adhm::solve_charge_one;
    use crate::monad::sample_instanton;

    #[test]
    fn monad_roundtrip_is_byte_exact() {
        let m = sample_instanton(2, 2, 7).unwrap();
        let s = monad_to_json(&m);
        assert!(s.starts_with(r#"{"field":"Q","r":2,"n":2,"epsilon":[[["#));
        assert!(s.ends_with("}\n"));
        assert_eq!(monad_from_json(&s).unwrap(), AnyMonad::Q(m.clone()));
        assert!(roundtrip(&s).unwrap());
        let spaced = s.replacen(",", ", ", 1);
        assert!(!roundtrip(&spaced).unwrap());
        assert_eq!(monad_from_json(&spaced).unwrap(), AnyMonad::Q(m));
    }

    #[test]
    fn other_fields_and_planes() {
        let m = sample_instanton(2, 1, 3).unwrap();
        let fp = PrimeField::new(10007).unwrap();
        let s = monad_to_json(&m.reduce(&fp).unwrap());
        assert!(s.contains("Fp:10007"));
        assert!(roundtrip(&s).unwrap());
        let plane = Matrix::from_fn(&Rationals, 4, 3, |i, j| Rationals.from_i64((i == j) as i64));
        let h = m.restrict_to_plane(&plane).unwrap();
        let s = monad_to_json(&h);
        assert_eq!(monad_from_json(&s).unwrap(), AnyMonad::Q(h));
    }

    #[test]
    fn adhm_and_extension_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let d = solve_charge_one(2, &mut rng).unwrap();
        let s = adhm_to_json(&d);
        assert_eq!(file_kind(&s).unwrap(), FileKind::Adhm);
        assert_eq!(adhm_from_json(&s).unwrap(), d);
        assert!(roundtrip(&s).unwrap());
        let e = ExtensionData::random(&Rationals, 2, 4, &mut rng, 3).unwrap();
        let s = extension_to_json(&e);
        assert_eq!(file_kind(&s).unwrap(), FileKind::Extension);
        assert!(roundtrip(&s).unwrap());
        assert_eq!(extension_from_json_in(&Rationals, &s).unwrap(), e);
    }

    #[test]
    fn diagnostics_carry_positions() {
        match monad_from_json("{\"field\": \"Q\",\n \"r\": }") {
            Err(IoError::Json { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        let m = sample_instanton(2, 1, 3).unwrap();
        let bad = monad_to_json(&m).replacen("\"epsilon\":[[[\"", "\"epsilon\":[[[\"x", 1);
        match monad_from_json(&bad) {
            Err(IoError::Entry { path, .. }) => assert_eq!(path, "epsilon[0][0][0]"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            monad_from_json_in(&GaussianRationals, &monad_to_json(&m)),
            Err(IoError::FieldMismatch { .. })
        ));
    }
}
