//! JSON documents for quantales, quantaloids, categories, distributors, contexts,
//! infomorphisms and concept lattices.
//!
//! Every top-level document carries a `schema` tag. Nested documents may omit it.
//! Arrows and degrees are written by label; chain elements also accept `"k/n"`.
//! A nested quantale, quantaloid or category may be given inline or as a path
//! resolved against the directory of the enclosing file.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::adjunction::{ConceptKind, ConceptLattice, EnumerationAlgorithm, Provenance};
use crate::completion::is_complete;
use crate::context::{FuzzyContext, FuzzySet};
use crate::distributor::{Infomorphism, QDistributor, Weight};
use crate::enriched::{QCategory, QFunctor};
use crate::quantaloid::{
    build_boolean_algebra, build_godel_chain, build_lukasiewicz_chain, build_nilpotent_minimum,
    quantaloid_from_divisible_quantale, quantaloid_from_quantale, FiniteLattice, QuantaleSpec,
    Quantaloid,
};
use crate::{Error, Result};

pub const QUANTALE_SCHEMA: &str = "qfca/quantale/v1";
pub const QUANTALOID_SCHEMA: &str = "qfca/quantaloid/v1";
pub const CATEGORY_SCHEMA: &str = "qfca/category/v1";
pub const DISTRIBUTOR_SCHEMA: &str = "qfca/distributor/v1";
pub const CONTEXT_SCHEMA: &str = "qfca/context/v1";
pub const INFOMORPHISM_SCHEMA: &str = "qfca/infomorphism/v1";
pub const LATTICE_SCHEMA: &str = "qfca/lattice/v1";

fn schema_err(location: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::Schema {
        location: location.into(),
        reason: reason.into(),
    }
}

fn check_schema(found: Option<&str>, expected: &str, top_level: bool) -> Result<()> {
    match found {
        Some(s) if s == expected => Ok(()),
        Some(s) => Err(schema_err(
            "schema",
            format!("expected `{expected}`, found `{s}`"),
        )),
        None if top_level => Err(schema_err("schema", format!("missing tag `{expected}`"))),
        None => Ok(()),
    }
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        schema_err(
            format!("line {}, column {}", e.line(), e.column()),
            e.to_string(),
        )
    })
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| schema_err(path.display().to_string(), e.to_string()))
}

fn resolve(base: Option<&Path>, rel: &str) -> PathBuf {
    match base {
        Some(dir) => dir.join(rel),
        None => PathBuf::from(rel),
    }
}

/// Either a nested document or a path to one.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Ref<T> {
    Path(String),
    Inline(Box<T>),
}

impl<T: for<'de> Deserialize<'de> + Clone> Ref<T> {
    fn load(&self, base: Option<&Path>) -> Result<(T, Option<PathBuf>)> {
        match self {
            Ref::Inline(doc) => Ok(((**doc).clone(), base.map(Path::to_path_buf))),
            Ref::Path(p) => {
                let path = resolve(base, p);
                let doc = from_json(&read_file(&path)?)?;
                Ok((doc, path.parent().map(Path::to_path_buf)))
            }
        }
    }
}

// ---------------------------------------------------------------- quantales

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantaleDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    /// `boolean`, `boolean:k`, `lukasiewicz:n`, `godel:n` or `nilpotent-minimum:n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    /// Pairs `[a, b]` meaning `a <= b`; the reflexive transitive closure is taken.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leq: Option<Vec<(String, String)>>,
    /// `tensor[a][b] = a & b`, rows and columns in element order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tensor: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
}

fn builtin_quantale(name: &str) -> Result<QuantaleSpec> {
    let (family, size) = match name.split_once(':') {
        Some((f, n)) => {
            let n = n
                .trim()
                .parse::<usize>()
                .map_err(|_| schema_err("builtin", format!("bad size in `{name}`")))?;
            (f.trim(), Some(n))
        }
        None => (name.trim(), None),
    };
    let need = |s: Option<usize>| {
        s.ok_or_else(|| schema_err("builtin", format!("`{family}` needs a size")))
    };
    match family {
        "boolean" => build_boolean_algebra(size.unwrap_or(1)),
        "lukasiewicz" => build_lukasiewicz_chain(need(size)?),
        "godel" => build_godel_chain(need(size)?),
        "nilpotent-minimum" => build_nilpotent_minimum(need(size)?),
        _ => Err(schema_err(
            "builtin",
            format!("unknown quantale `{family}`"),
        )),
    }
}

fn lattice_from_doc(
    name: &str,
    elements: &[String],
    leq: &[(String, String)],
    location: &str,
) -> Result<FiniteLattice> {
    let idx = |l: &str, at: String| {
        elements
            .iter()
            .position(|e| e == l)
            .ok_or_else(|| schema_err(at, format!("unknown element `{l}`")))
    };
    let pairs = leq
        .iter()
        .enumerate()
        .map(|(i, (a, b))| {
            Ok((
                idx(a, format!("{location}.leq[{i}]"))?,
                idx(b, format!("{location}.leq[{i}]"))?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteLattice::from_pairs(name, elements.to_vec(), &pairs)
}

impl QuantaleDoc {
    pub fn build(&self) -> Result<QuantaleSpec> {
        if let Some(b) = &self.builtin {
            return builtin_quantale(b);
        }
        let missing = |f: &str| schema_err(f, "required unless `builtin` is given");
        let elements = self.elements.as_ref().ok_or_else(|| missing("elements"))?;
        let leq = self.leq.as_ref().ok_or_else(|| missing("leq"))?;
        let tensor = self.tensor.as_ref().ok_or_else(|| missing("tensor"))?;
        let unit = self.unit.as_ref().ok_or_else(|| missing("unit"))?;
        let lattice = lattice_from_doc("quantale", elements, leq, "quantale")?;
        let n = elements.len();
        if tensor.len() != n || tensor.iter().any(|r| r.len() != n) {
            return Err(schema_err("tensor", format!("expected a {n} x {n} table")));
        }
        let find = |l: &str, at: String| {
            lattice
                .index_of(l)
                .ok_or_else(|| schema_err(at, format!("unknown element `{l}`")))
        };
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in tensor.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                table.push(find(v, format!("tensor[{i}][{j}]"))?);
            }
        }
        let unit = find(unit, "unit".into())?;
        QuantaleSpec::checked(lattice, table, unit)
    }

    /// A fully explicit document for `q`.
    pub fn from_spec(q: &QuantaleSpec) -> Self {
        let l = q.lattice();
        let label = |a: usize| q.label(a).to_string();
        QuantaleDoc {
            schema: None,
            builtin: None,
            elements: Some(q.labels().to_vec()),
            leq: Some(
                l.order_pairs()
                    .into_iter()
                    .map(|(a, b)| (label(a), label(b)))
                    .collect(),
            ),
            tensor: Some(
                (0..q.len())
                    .map(|a| (0..q.len()).map(|b| label(q.tensor(a, b))).collect())
                    .collect(),
            ),
            unit: Some(label(q.unit())),
        }
    }
}

pub fn parse_quantale(text: &str) -> Result<QuantaleSpec> {
    let doc: QuantaleDoc = from_json(text)?;
    check_schema(doc.schema.as_deref(), QUANTALE_SCHEMA, true)?;
    doc.build()
}

/// Parse the quantale without enforcing its laws, for reporting violations.
pub fn parse_quantale_unchecked(text: &str) -> Result<QuantaleSpec> {
    let doc: QuantaleDoc = from_json(text)?;
    check_schema(doc.schema.as_deref(), QUANTALE_SCHEMA, true)?;
    if let Some(b) = &doc.builtin {
        return builtin_quantale(b);
    }
    let missing = |f: &str| schema_err(f, "required unless `builtin` is given");
    let elements = doc.elements.as_ref().ok_or_else(|| missing("elements"))?;
    let lattice = lattice_from_doc(
        "quantale",
        elements,
        doc.leq.as_ref().ok_or_else(|| missing("leq"))?,
        "quantale",
    )?;
    let tensor = doc.tensor.as_ref().ok_or_else(|| missing("tensor"))?;
    let n = elements.len();
    if tensor.len() != n || tensor.iter().any(|r| r.len() != n) {
        return Err(schema_err("tensor", format!("expected a {n} x {n} table")));
    }
    let find = |l: &str, at: String| {
        lattice
            .index_of(l)
            .ok_or_else(|| schema_err(at, format!("unknown element `{l}`")))
    };
    let mut table = Vec::with_capacity(n * n);
    for (i, row) in tensor.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            table.push(find(v, format!("tensor[{i}][{j}]"))?);
        }
    }
    let unit = find(
        doc.unit.as_ref().ok_or_else(|| missing("unit"))?,
        "unit".into(),
    )?;
    QuantaleSpec::new(lattice, table, unit)
}

pub fn quantale_to_json(q: &QuantaleSpec) -> String {
    let mut doc = QuantaleDoc::from_spec(q);
    doc.schema = Some(QUANTALE_SCHEMA.into());
    to_json(&doc)
}

// -------------------------------------------------------------- quantaloids

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomDoc {
    pub dom: String,
    pub cod: String,
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComposeDoc {
    /// Objects `[x, y, z]`; the table gives `g . f` for `f: x -> y`, `g: y -> z`.
    pub objects: (String, String, String),
    /// `table[g][f]`.
    pub table: Vec<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    /// The quantale as a one-object quantaloid.
    Single,
    /// The quantaloid of a divisible quantale.
    Divisible,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantaloidDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantale: Option<Ref<QuantaleDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<Construction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objects: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homs: Option<Vec<HomDoc>>,
    /// Unit arrow label per object, in object order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compose: Option<Vec<ComposeDoc>>,
}

impl QuantaloidDoc {
    pub fn build(&self, base: Option<&Path>) -> Result<Quantaloid> {
        if let Some(r) = &self.quantale {
            let (qd, _) = r.load(base)?;
            let q = qd.build()?;
            return match self.construction.unwrap_or(Construction::Divisible) {
                Construction::Single => Ok(quantaloid_from_quantale(&q)),
                Construction::Divisible => quantaloid_from_divisible_quantale(&q),
            };
        }
        let missing = |f: &str| schema_err(f, "required unless `quantale` is given");
        let objects = self.objects.as_ref().ok_or_else(|| missing("objects"))?;
        let homs_doc = self.homs.as_ref().ok_or_else(|| missing("homs"))?;
        let units_doc = self.units.as_ref().ok_or_else(|| missing("units"))?;
        let compose_doc = self.compose.as_ref().ok_or_else(|| missing("compose"))?;
        let n = objects.len();
        let obj = |l: &str, at: String| {
            objects
                .iter()
                .position(|o| o == l)
                .ok_or_else(|| schema_err(at, format!("unknown object `{l}`")))
        };
        let mut homs: Vec<Option<FiniteLattice>> = vec![None; n * n];
        for (i, h) in homs_doc.iter().enumerate() {
            let at = format!("homs[{i}]");
            let (x, y) = (obj(&h.dom, at.clone())?, obj(&h.cod, at.clone())?);
            let name = format!("hom({},{})", h.dom, h.cod);
            homs[x * n + y] = Some(lattice_from_doc(&name, &h.elements, &h.leq, &at)?);
        }
        let homs: Vec<FiniteLattice> = homs
            .into_iter()
            .enumerate()
            .map(|(c, h)| {
                h.ok_or_else(|| {
                    schema_err(
                        "homs",
                        format!("missing hom({},{})", objects[c / n], objects[c % n]),
                    )
                })
            })
            .collect::<Result<_>>()?;
        if units_doc.len() != n {
            return Err(schema_err("units", format!("expected {n} entries")));
        }
        let units = units_doc
            .iter()
            .enumerate()
            .map(|(x, u)| {
                homs[x * n + x].index_of(u).ok_or_else(|| {
                    schema_err(format!("units[{x}]"), format!("unknown arrow `{u}`"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut comp: Vec<Option<Vec<usize>>> = vec![None; n * n * n];
        for (i, c) in compose_doc.iter().enumerate() {
            let at = format!("compose[{i}]");
            let x = obj(&c.objects.0, at.clone())?;
            let y = obj(&c.objects.1, at.clone())?;
            let z = obj(&c.objects.2, at.clone())?;
            let (f_hom, g_hom, h_hom) = (&homs[x * n + y], &homs[y * n + z], &homs[x * n + z]);
            if c.table.len() != g_hom.len() || c.table.iter().any(|r| r.len() != f_hom.len()) {
                return Err(schema_err(
                    at,
                    format!("expected a {} x {} table", g_hom.len(), f_hom.len()),
                ));
            }
            let mut t = Vec::with_capacity(g_hom.len() * f_hom.len());
            for (g, row) in c.table.iter().enumerate() {
                for (f, v) in row.iter().enumerate() {
                    t.push(h_hom.index_of(v).ok_or_else(|| {
                        schema_err(
                            format!("{at}.table[{g}][{f}]"),
                            format!("unknown arrow `{v}`"),
                        )
                    })?);
                }
            }
            comp[(x * n + y) * n + z] = Some(t);
        }
        let comp = comp
            .into_iter()
            .enumerate()
            .map(|(c, t)| {
                t.ok_or_else(|| {
                    let (x, y, z) = (c / (n * n), c / n % n, c % n);
                    schema_err(
                        "compose",
                        format!(
                            "missing table for ({}, {}, {})",
                            objects[x], objects[y], objects[z]
                        ),
                    )
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Quantaloid::from_tables(objects.clone(), homs, units, comp)
    }
}

pub fn parse_quantaloid(text: &str, base: Option<&Path>) -> Result<Quantaloid> {
    let doc: QuantaloidDoc = from_json(text)?;
    check_schema(doc.schema.as_deref(), QUANTALOID_SCHEMA, true)?;
    doc.build(base)
}

/// A fully explicit document for `q`.
pub fn quantaloid_to_json(q: &Quantaloid) -> String {
    let n = q.n();
    let objs = q.objects();
    let mut homs = Vec::new();
    let mut compose = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let h = q.hom(x, y);
            homs.push(HomDoc {
                dom: objs[x].clone(),
                cod: objs[y].clone(),
                elements: h.labels().to_vec(),
                leq: h
                    .order_pairs()
                    .into_iter()
                    .map(|(a, b)| (h.label(a).to_string(), h.label(b).to_string()))
                    .collect(),
            });
            for z in 0..n {
                let table = (0..q.hom(y, z).len())
                    .map(|g| {
                        (0..h.len())
                            .map(|f| q.hom(x, z).label(q.comp_idx(x, y, z, g, f)).to_string())
                            .collect()
                    })
                    .collect();
                compose.push(ComposeDoc {
                    objects: (objs[x].clone(), objs[y].clone(), objs[z].clone()),
                    table,
                });
            }
        }
    }
    let doc = QuantaloidDoc {
        schema: Some(QUANTALOID_SCHEMA.into()),
        quantale: None,
        construction: None,
        objects: Some(objs.to_vec()),
        homs: Some(homs),
        units: Some(
            (0..n)
                .map(|x| q.arrow_label(q.unit(x)).to_string())
                .collect(),
        ),
        compose: Some(compose),
    };
    to_json(&doc)
}

// --------------------------------------------------------------- categories

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypedObjectDoc {
    pub label: String,
    #[serde(rename = "type")]
    pub ty: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryBody {
    pub objects: Vec<TypedObjectDoc>,
    /// `hom[x][y]` by arrow label.
    pub hom: Vec<Vec<String>>,
}

impl CategoryBody {
    fn build(&self, q: &Arc<Quantaloid>, location: &str) -> Result<QCategory> {
        let labels = self.objects.iter().map(|o| o.label.clone()).collect();
        let types = self
            .objects
            .iter()
            .enumerate()
            .map(|(i, o)| {
                q.object(&o.ty).ok_or_else(|| {
                    schema_err(
                        format!("{location}.objects[{i}].type"),
                        format!("unknown quantaloid object `{}`", o.ty),
                    )
                })
            })
            .collect::<Result<Vec<_>>>()?;
        QCategory::from_labels(Arc::clone(q), labels, types, &self.hom)
    }

    pub fn from_category(a: &QCategory) -> Self {
        let q = a.quantaloid();
        CategoryBody {
            objects: (0..a.n())
                .map(|x| TypedObjectDoc {
                    label: a.label(x).to_string(),
                    ty: q.objects()[a.ty(x)].clone(),
                })
                .collect(),
            hom: (0..a.n())
                .map(|x| {
                    (0..a.n())
                        .map(|y| q.arrow_label(a.hom(x, y)).to_string())
                        .collect()
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CategoryDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub quantaloid: Ref<QuantaloidDoc>,
    #[serde(flatten)]
    pub body: CategoryBody,
}

fn load_quantaloid(r: &Ref<QuantaloidDoc>, base: Option<&Path>) -> Result<Arc<Quantaloid>> {
    let (doc, dir) = r.load(base)?;
    Ok(Arc::new(doc.build(dir.as_deref())?))
}

pub fn parse_category(text: &str, base: Option<&Path>) -> Result<QCategory> {
    let doc: CategoryDoc = from_json(text)?;
    check_schema(doc.schema.as_deref(), CATEGORY_SCHEMA, true)?;
    let q = load_quantaloid(&doc.quantaloid, base)?;
    doc.body.build(&q, "category")
}

pub fn category_to_json(a: &QCategory) -> String {
    let q = a.quantaloid();
    let qdoc: QuantaloidDoc = from_json(&quantaloid_to_json(q)).expect("own output parses");
    let doc = CategoryDoc {
        schema: Some(CATEGORY_SCHEMA.into()),
        quantaloid: Ref::Inline(Box::new(QuantaloidDoc {
            schema: None,
            ..qdoc
        })),
        body: CategoryBody::from_category(a),
    };
    to_json(&doc)
}

// ------------------------------------------------------------- distributors

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributorBody {
    pub dom: CategoryBody,
    pub cod: CategoryBody,
    /// `matrix[x][y]` by arrow label.
    pub matrix: Vec<Vec<String>>,
}

impl DistributorBody {
    fn build(&self, q: &Arc<Quantaloid>, location: &str) -> Result<QDistributor> {
        let dom = Arc::new(self.dom.build(q, &format!("{location}.dom"))?);
        let cod = Arc::new(self.cod.build(q, &format!("{location}.cod"))?);
        QDistributor::from_labels(dom, cod, &self.matrix)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DistributorDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub quantaloid: Ref<QuantaloidDoc>,
    #[serde(flatten)]
    pub body: DistributorBody,
}

pub fn parse_distributor(text: &str, base: Option<&Path>) -> Result<QDistributor> {
    let doc: DistributorDoc = from_json(text)?;
    check_schema(doc.schema.as_deref(), DISTRIBUTOR_SCHEMA, true)?;
    let q = load_quantaloid(&doc.quantaloid, base)?;
    doc.body.build(&q, "distributor")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InfomorphismDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub quantaloid: Ref<QuantaloidDoc>,
    pub source: DistributorBody,
    pub target: DistributorBody,
    /// Image in the target domain of each source domain object, in order.
    pub f: Vec<String>,
    /// Image in the source codomain of each target codomain object, in order.
    pub g: Vec<String>,
}

fn functor_by_labels(
    dom: &Arc<QCategory>,
    cod: &Arc<QCategory>,
    images: &[String],
    at: &str,
) -> Result<QFunctor> {
    if images.len() != dom.n() {
        return Err(schema_err(at, format!("expected {} images", dom.n())));
    }
    let map = images
        .iter()
        .enumerate()
        .map(|(i, l)| {
            cod.labels()
                .iter()
                .position(|c| c == l)
                .ok_or_else(|| schema_err(format!("{at}[{i}]"), format!("unknown object `{l}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    QFunctor::new(Arc::clone(dom), Arc::clone(cod), map)
}

pub fn parse_infomorphism(text: &str, base: Option<&Path>) -> Result<Infomorphism> {
    let doc: InfomorphismDoc = from_json(text)?;
    check_schema(doc.schema.as_deref(), INFOMORPHISM_SCHEMA, true)?;
    let q = load_quantaloid(&doc.quantaloid, base)?;
    let source = doc.source.build(&q, "source")?;
    let target = doc.target.build(&q, "target")?;
    let f = functor_by_labels(&source.dom, &target.dom, &doc.f, "f")?;
    let g = functor_by_labels(&target.cod, &source.cod, &doc.g, "g")?;
    Infomorphism::new(source, target, f, g)
}

// ----------------------------------------------------------------- contexts

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MemberDoc {
    /// Full membership.
    Plain(String),
    Graded {
        label: String,
        degree: String,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub quantale: Ref<QuantaleDoc>,
    pub objects: Vec<MemberDoc>,
    pub attributes: Vec<MemberDoc>,
    /// `incidence[x][y]` as degrees.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub incidence: Option<Vec<Vec<String>>>,
    /// Crisp shorthand: `[object, attribute]` pairs at full degree; everything else is bottom.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<(String, String)>>,
}

fn degree(q: &QuantaleSpec, label: &str, at: String) -> Result<usize> {
    q.element(label)
        .ok_or_else(|| schema_err(at, format!("`{label}` is not an element of the quantale")))
}

fn fuzzy_set(q: &QuantaleSpec, members: &[MemberDoc], at: &str) -> Result<FuzzySet> {
    let mut labels = Vec::with_capacity(members.len());
    let mut degrees = Vec::with_capacity(members.len());
    for (i, m) in members.iter().enumerate() {
        match m {
            MemberDoc::Plain(l) => {
                labels.push(l.clone());
                degrees.push(q.lattice().top());
            }
            MemberDoc::Graded { label, degree: d } => {
                labels.push(label.clone());
                degrees.push(degree(q, d, format!("{at}[{i}].degree"))?);
            }
        }
    }
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(schema_err(
                format!("{at}[{i}]"),
                format!("duplicate label `{l}`"),
            ));
        }
    }
    FuzzySet::new(labels, degrees)
}

pub fn parse_context(text: &str, base: Option<&Path>) -> Result<FuzzyContext> {
    let doc: ContextDoc = from_json(text)?;
    check_schema(doc.schema.as_deref(), CONTEXT_SCHEMA, true)?;
    let (qd, _) = doc.quantale.load(base)?;
    let q = qd.build()?;
    let a = fuzzy_set(&q, &doc.objects, "objects")?;
    let b = fuzzy_set(&q, &doc.attributes, "attributes")?;
    let (na, nb) = (a.len(), b.len());
    let incidence =
        match (&doc.incidence, &doc.pairs) {
            (Some(_), Some(_)) => {
                return Err(schema_err(
                    "incidence",
                    "give either `incidence` or `pairs`, not both",
                ))
            }
            (None, None) => return Err(schema_err("incidence", "missing `incidence` or `pairs`")),
            (Some(rows), None) => {
                if rows.len() != na {
                    return Err(schema_err("incidence", format!("expected {na} rows")));
                }
                let mut out = Vec::with_capacity(na * nb);
                for (x, row) in rows.iter().enumerate() {
                    if row.len() != nb {
                        return Err(schema_err(
                            format!("incidence[{x}]"),
                            format!("expected {nb} entries"),
                        ));
                    }
                    for (y, d) in row.iter().enumerate() {
                        out.push(degree(&q, d, format!("incidence[{x}][{y}]"))?);
                    }
                }
                out
            }
            (None, Some(pairs)) => {
                let mut out = vec![q.lattice().bottom(); na * nb];
                for (i, (o, p)) in pairs.iter().enumerate() {
                    let at = format!("pairs[{i}]");
                    let x =
                        a.labels.iter().position(|l| l == o).ok_or_else(|| {
                            schema_err(at.clone(), format!("unknown object `{o}`"))
                        })?;
                    let y = b.labels.iter().position(|l| l == p).ok_or_else(|| {
                        schema_err(at.clone(), format!("unknown attribute `{p}`"))
                    })?;
                    out[x * nb + y] = q.meet(a.degrees[x], b.degrees[y]);
                }
                out
            }
        };
    FuzzyContext::new(q, a, b, incidence)
}

pub fn parse_context_file(path: &Path) -> Result<FuzzyContext> {
    parse_context(&read_file(path)?, path.parent())
}

pub fn context_to_json(ctx: &FuzzyContext) -> String {
    let q = ctx.quantale();
    let top = q.lattice().top();
    let members = |s: &FuzzySet| -> Vec<MemberDoc> {
        s.labels
            .iter()
            .zip(&s.degrees)
            .map(|(l, &d)| {
                if d == top {
                    MemberDoc::Plain(l.clone())
                } else {
                    MemberDoc::Graded {
                        label: l.clone(),
                        degree: q.label(d).to_string(),
                    }
                }
            })
            .collect()
    };
    let nb = ctx.attributes().len();
    let doc = ContextDoc {
        schema: Some(CONTEXT_SCHEMA.into()),
        quantale: Ref::Inline(Box::new(QuantaleDoc::from_spec(q))),
        objects: members(ctx.objects()),
        attributes: members(ctx.attributes()),
        incidence: Some(
            (0..ctx.objects().len())
                .map(|x| {
                    (0..nb)
                        .map(|y| q.label(ctx.degree(x, y)).to_string())
                        .collect()
                })
                .collect(),
        ),
        pairs: None,
    };
    to_json(&doc)
}

// ---------------------------------------------------------------- lattices

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConceptDoc {
    pub id: String,
    /// The common type of both components.
    #[serde(rename = "type")]
    pub ty: String,
    /// `μ(x)` for each domain object, by arrow label.
    pub extent: Vec<String>,
    /// `λ(y)` for each codomain object, by arrow label.
    pub intent: Vec<String>,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletenessDoc {
    /// False when the presheaf space of the lattice exceeded the cap.
    pub checked: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub co_complete: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formulas_agree: Option<bool>,
    pub presheaves: usize,
    pub copresheaves: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingDoc {
    pub object: String,
    pub concept: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDoc {
    pub schema: String,
    pub kind: String,
    pub algorithm: String,
    pub objects: Vec<String>,
    pub attributes: Vec<String>,
    pub concepts: Vec<ConceptDoc>,
    /// `hom[i][j] = PA(μ_i, μ_j)` by arrow label.
    pub hom: Vec<Vec<String>>,
    pub completeness: CompletenessDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<Vec<EmbeddingDoc>>,
}

fn render_weight(
    q: &Quantaloid,
    slot: impl Fn(usize) -> (usize, usize),
    w: &Weight,
) -> Vec<String> {
    w.w.iter()
        .enumerate()
        .map(|(x, &i)| {
            let (s, t) = slot(x);
            q.hom(s, t).label(i).to_string()
        })
        .collect()
}

fn provenance_label(p: &Provenance, attributes: &QCategory) -> String {
    match p {
        Provenance::Column(y) => format!("column {}", attributes.label(*y)),
        Provenance::Extremal => "extremal".into(),
        Provenance::Closure => "closure".into(),
        Provenance::Scan => "scan".into(),
    }
}

/// The output document of a concept lattice; completeness is checked up to `cap`.
pub fn lattice_document(
    lattice: &ConceptLattice,
    algorithm: EnumerationAlgorithm,
    cap: u128,
) -> LatticeDoc {
    let phi = &lattice.phi;
    let (a, b) = (&phi.dom, &phi.cod);
    let q = a.quantaloid();
    let cat = lattice.category();
    let concepts = lattice
        .concepts()
        .iter()
        .zip(lattice.provenance())
        .enumerate()
        .map(|(i, (c, p))| ConceptDoc {
            id: cat.label(i).to_string(),
            ty: q.objects()[c.ty].clone(),
            extent: render_weight(q, |x| (a.ty(x), c.ty), &c.mu),
            intent: match lattice.kind {
                ConceptKind::Isbell => render_weight(q, |y| (c.ty, b.ty(y)), &c.lam),
                ConceptKind::Kan => render_weight(q, |y| (b.ty(y), c.ty), &c.lam),
            },
            source: provenance_label(p, b),
        })
        .collect();
    let hom = (0..cat.n())
        .map(|i| {
            (0..cat.n())
                .map(|j| q.arrow_label(cat.hom(i, j)).to_string())
                .collect()
        })
        .collect();
    let completeness = match is_complete(cat, cap) {
        Ok(r) => CompletenessDoc {
            checked: true,
            complete: Some(r.complete),
            co_complete: Some(r.co_complete),
            formulas_agree: Some(r.formulas_agree),
            presheaves: r.presheaves,
            copresheaves: r.copresheaves,
        },
        Err(_) => CompletenessDoc {
            checked: false,
            complete: None,
            co_complete: None,
            formulas_agree: None,
            presheaves: 0,
            copresheaves: 0,
        },
    };
    LatticeDoc {
        schema: LATTICE_SCHEMA.into(),
        kind: match lattice.kind {
            ConceptKind::Isbell => "isbell".into(),
            ConceptKind::Kan => "kan".into(),
        },
        algorithm: match algorithm {
            EnumerationAlgorithm::Brute => "brute".into(),
            EnumerationAlgorithm::Generated => "generated".into(),
        },
        objects: a.labels().to_vec(),
        attributes: b.labels().to_vec(),
        concepts,
        hom,
        completeness,
        cross_check: None,
        embedding: None,
    }
}

pub fn parse_lattice_document(text: &str) -> Result<LatticeDoc> {
    let doc: LatticeDoc = from_json(text)?;
    check_schema(Some(&doc.schema), LATTICE_SCHEMA, true)?;
    Ok(doc)
}

/// Dispatch on the `schema` tag of a document.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DocumentKind {
    Quantale,
    Quantaloid,
    Category,
    Distributor,
    Context,
    Infomorphism,
    Lattice,
}

impl DocumentKind {
    pub fn schema(self) -> &'static str {
        match self {
            Self::Quantale => QUANTALE_SCHEMA,
            Self::Quantaloid => QUANTALOID_SCHEMA,
            Self::Category => CATEGORY_SCHEMA,
            Self::Distributor => DISTRIBUTOR_SCHEMA,
            Self::Context => CONTEXT_SCHEMA,
            Self::Infomorphism => INFOMORPHISM_SCHEMA,
            Self::Lattice => LATTICE_SCHEMA,
        }
    }

    pub fn detect(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Tag {
            schema: Option<String>,
        }
        let tag: Tag = from_json(text)?;
        let s = tag
            .schema
            .ok_or_else(|| schema_err("schema", "missing tag"))?;
        [
            Self::Quantale,
            Self::Quantaloid,
            Self::Category,
            Self::Distributor,
            Self::Context,
            Self::Infomorphism,
            Self::Lattice,
        ]
        .into_iter()
        .find(|k| k.schema() == s)
        .ok_or_else(|| schema_err("schema", format!("unknown tag `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CTX1: &str = r#"{
        "schema": "qfca/context/v1",
        "quantale": {"builtin": "boolean"},
        "objects": ["1", "2"],
        "attributes": ["a", "b"],
        "pairs": [["1", "a"], ["1", "b"], ["2", "b"]]
    }"#;

    #[test]
    fn crisp_context_parses() {
        let ctx = parse_context(CTX1, None).unwrap();
        assert!(ctx.is_crisp());
        let top = ctx.quantale().lattice().top();
        let bot = ctx.quantale().lattice().bottom();
        assert_eq!(ctx.incidence(), &[top, top, bot, top]);
    }

    #[test]
    fn context_round_trip() {
        let ctx = parse_context(CTX1, None).unwrap();
        let again = parse_context(&context_to_json(&ctx), None).unwrap();
        assert_eq!(ctx, again);
    }

    #[test]
    fn fuzzy_context_with_fraction_degrees() {
        let text = r#"{
            "schema": "qfca/context/v1",
            "quantale": {"builtin": "lukasiewicz:3"},
            "objects": [{"label": "x", "degree": "1/2"}, {"label": "y", "degree": "2/4"}],
            "attributes": ["p", "q"],
            "incidence": [["1/2", "1/2"], ["1/2", "0"]]
        }"#;
        let ctx = parse_context(text, None).unwrap();
        assert_eq!(
            ctx.objects().degrees[1],
            ctx.quantale().element("1/2").unwrap()
        );
        let bad = text.replacen(r#"[["1/2", "1/2"]"#, r#"[["1", "1/2"]"#, 1);
        assert!(matches!(
            parse_context(&bad, None),
            Err(Error::DegreeOutOfHom { .. })
        ));
    }

    #[test]
    fn schema_tag_is_enforced() {
        let wrong = CTX1.replace("qfca/context/v1", "qfca/category/v1");
        assert!(matches!(
            parse_context(&wrong, None),
            Err(Error::Schema { .. })
        ));
        assert_eq!(DocumentKind::detect(CTX1).unwrap(), DocumentKind::Context);
    }

    #[test]
    fn quantaloid_round_trip() {
        let q = quantaloid_from_divisible_quantale(&build_lukasiewicz_chain(3).unwrap()).unwrap();
        let again = parse_quantaloid(&quantaloid_to_json(&q), None).unwrap();
        assert_eq!(q.objects(), again.objects());
        for x in 0..q.n() {
            for y in 0..q.n() {
                for z in 0..q.n() {
                    for g in 0..q.hom(y, z).len() {
                        for f in 0..q.hom(x, y).len() {
                            assert_eq!(q.comp_idx(x, y, z, g, f), again.comp_idx(x, y, z, g, f));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn quantale_round_trip() {
        let q = build_nilpotent_minimum(5).unwrap();
        assert_eq!(parse_quantale(&quantale_to_json(&q)).unwrap(), q);
    }

    #[test]
    fn category_round_trip() {
        let q = Arc::new(
            quantaloid_from_divisible_quantale(&build_lukasiewicz_chain(3).unwrap()).unwrap(),
        );
        let a = crate::random::random_category(&q, 3, &mut crate::random::rng(3));
        let back = parse_category(&category_to_json(&a), None).unwrap();
        assert_eq!(a.hom_matrix(), back.hom_matrix());
        assert_eq!(a.types(), back.types());
    }
}
