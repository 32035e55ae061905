//! Manifold descriptors and their loop space decompositions.
//!
//! For a Poincaré duality complex `P` whose cohomology below the top cell
//! runs from degree `m` to `n - m`, with `J` the part of the skeleton
//! strictly between the two extreme generators,
//!
//! `ΩP ≃ Ω(S^m × S^{n-m}) × Ω(J ∨ (J ∧ Ω(S^m × S^{n-m})))`.
//!
//! Four-manifolds, `(n-1)`-connected `2n`-manifolds, connected sums with
//! `S^m × S^{n-m}`, bundles and configuration spaces all reduce to this.

use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::expr::{SpaceExpr, SphereWedge};
use crate::ss_oracle::{z_construct, IntersectionForm, ZModel};
use crate::{json as js, Count};

/// A Poincaré duality complex of dimension `n` with extreme middle
/// generators in degrees `m` and `n - m` and remaining skeleton `J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PDSpec {
    pub m: u32,
    pub n: u32,
    pub j: SphereWedge,
}

impl PDSpec {
    pub fn new(m: u32, n: u32, j: SphereWedge) -> Result<Self> {
        let p = PDSpec { m, n, j };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        check_range(self.m, self.n, &self.j, "J")
    }

    /// `ℓ`: the number of middle cohomology generators.
    pub fn generator_count(&self) -> Count {
        self.j.size() + Count::from(2u32)
    }
}

fn check_range(m: u32, n: u32, j: &SphereWedge, what: &str) -> Result<()> {
    if m < 2 || m.checked_mul(2).is_none_or(|twice| twice > n) {
        return Err(Error::Validation(format!("need 1 < m <= n - m, got m = {m}, n = {n}")));
    }
    if let (Some(lo), Some(hi)) = (j.min_dim(), j.max_dim()) {
        if lo < m || hi > n - m {
            return Err(Error::Validation(format!(
                "{what} dimensions must lie in [{m}, {}], got {j}",
                n - m
            )));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourManifoldSpec {
    /// rank of `H^2`
    pub k: u32,
    pub form: Option<IntersectionForm>,
}

impl FourManifoldSpec {
    pub fn new(k: u32) -> Self {
        FourManifoldSpec { k, form: None }
    }

    pub fn with_form(form: IntersectionForm) -> Self {
        FourManifoldSpec {
            k: form.rank() as u32,
            form: Some(form),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match &self.form {
            Some(f) if f.rank() != self.k as usize => Err(Error::Validation(format!(
                "intersection form has rank {} but k = {}",
                f.rank(),
                self.k
            ))),
            _ => Ok(()),
        }
    }
}

/// An `(n-1)`-connected `2n`-manifold with `H^n` of rank `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WallSpec {
    pub n: u32,
    pub k: u32,
}

impl WallSpec {
    fn check_dimension(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Validation(format!("need n >= 2, got n = {}", self.n)));
        }
        if matches!(self.n, 2 | 4 | 8) {
            return Err(Error::ExcludedCase { n: self.n });
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.check_dimension()?;
        if self.k < 2 {
            return Err(Error::OutOfScope(format!("only k >= 2 is covered, got k = {}", self.k)));
        }
        Ok(())
    }
}

/// `M # (S^m × S^{n-m})`, described by the homotopy type of `M - *`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnSumSpec {
    pub m: u32,
    pub n: u32,
    pub punctured_skeleton: SphereWedge,
}

impl ConnSumSpec {
    pub fn validate(&self) -> Result<()> {
        check_range(self.m, self.n, &self.punctured_skeleton, "punctured skeleton")
    }

    /// Cohomology below the top degree of the connected sum.
    fn middle_cells(&self) -> SphereWedge {
        let mut w = self.punctured_skeleton.clone();
        w.insert(self.m, Count::from(1u32)).expect("m >= 2");
        w.insert(self.n - self.m, Count::from(1u32)).expect("n - m >= 2");
        w
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ManifoldSpec {
    FourManifold(FourManifoldSpec),
    Wall(WallSpec),
    PdComplex(PDSpec),
    ConnectedSum(ConnSumSpec),
    Bundle {
        base: FourManifoldSpec,
        group_spheres: Vec<u32>,
    },
    ConfigSpace {
        base: ConnSumSpec,
        points: u32,
    },
}

fn q_expr(m: u32, n: u32) -> SpaceExpr {
    SpaceExpr::product([SpaceExpr::sphere(m), SpaceExpr::sphere(n - m)])
}

/// `Ω(S^m × S^{n-m}) × Ω(J ∨ (J ∧ Ω(S^m × S^{n-m})))`, canonicalized. The
/// half-smash is kept symbolic; [`crate::normal_form`] expands it.
pub fn decompose_general(p: &PDSpec) -> Result<SpaceExpr> {
    p.validate()?;
    let lq = SpaceExpr::loop_of(q_expr(p.m, p.n));
    if p.j.is_point() {
        return Ok(lq.canonicalize());
    }
    let j = p.j.to_expr()?;
    let w = SpaceExpr::wedge([j.clone(), SpaceExpr::smash([j, lq.clone()])]);
    Ok(SpaceExpr::product([lq, SpaceExpr::loop_of(w)]).canonicalize())
}

pub fn decompose_wall(w: &WallSpec) -> Result<SpaceExpr> {
    w.validate()?;
    let j = if w.k == 2 {
        SphereWedge::point()
    } else {
        SphereWedge::from_pairs([(w.n, w.k - 2)])?
    };
    decompose_general(&PDSpec::new(w.n, 2 * w.n, j)?)
}

pub fn decompose_conn_sum(c: &ConnSumSpec) -> Result<SpaceExpr> {
    c.validate()?;
    decompose_general(&PDSpec::new(c.m, c.n, c.punctured_skeleton.clone())?)
}

/// `J = ⋁^{k-2} (S^2 ∨ S^3)` for the circle bundle `Z` over `M`.
fn four_manifold_z(k: u32) -> Result<PDSpec> {
    let j = if k == 2 {
        SphereWedge::point()
    } else {
        SphereWedge::from_pairs([(2u32, k - 2), (3, k - 2)])?
    };
    PDSpec::new(2, 5, j)
}

pub fn decompose_four_manifold(f: &FourManifoldSpec) -> Result<SpaceExpr> {
    f.validate()?;
    let out = match f.k {
        0 => SpaceExpr::loop_of(SpaceExpr::sphere(4)),
        1 => SpaceExpr::product([SpaceExpr::sphere(1), SpaceExpr::loop_of(SpaceExpr::sphere(5))]),
        k => SpaceExpr::product([SpaceExpr::sphere(1), decompose_general(&four_manifold_z(k)?)?]),
    }
    .canonicalize();
    // the answer depends on k only; a supplied form must agree with it
    if let Some(form) = &f.form {
        if f.k > 0 {
            let expected = match f.k {
                1 => ZModel::Sphere5,
                k => ZModel::Complex(four_manifold_z(k)?),
            };
            let got = z_construct(form)?;
            if got != expected {
                return Err(Error::Oracle(format!(
                    "circle bundle from the intersection form gives {got:?}, expected {expected:?}"
                )));
            }
        }
    }
    Ok(out)
}

pub fn decompose_bundle(f: &FourManifoldSpec, group_spheres: &[u32]) -> Result<SpaceExpr> {
    if f.k < 2 {
        return Err(Error::HypothesisNotMet(format!("bundle decomposition needs k >= 2, got k = {}", f.k)));
    }
    if group_spheres.is_empty() {
        return Err(Error::Validation("group_spheres must be nonempty".into()));
    }
    if let Some(d) = group_spheres.iter().find(|&&d| d < 3 || d % 2 == 0) {
        return Err(Error::Validation(format!("group spheres must be odd and >= 3, got {d}")));
    }
    let mut parts = vec![decompose_four_manifold(f)?];
    parts.extend(group_spheres.iter().map(|&d| SpaceExpr::loop_of(SpaceExpr::sphere(d))));
    Ok(SpaceExpr::product(parts).canonicalize())
}

/// Factors of `ΩF_k(M)` for `M` the connected sum: `ΩM` followed by
/// `Ω(M - Q_i)` for `i = 1..k`.
pub fn decompose_config(c: &ConnSumSpec, points: u32) -> Result<Vec<SpaceExpr>> {
    c.validate()?;
    if c.n.is_multiple_of(2) {
        return Err(Error::HypothesisNotMet(format!(
            "configuration space decomposition needs n odd, got n = {}",
            c.n
        )));
    }
    if points == 0 {
        return Err(Error::Validation("points must be >= 1".into()));
    }
    let mut out = vec![decompose_conn_sum(c)?];
    let base = c.middle_cells();
    for i in 1..=points {
        let mut w = base.clone();
        if i > 1 {
            w.insert(c.n - 1, Count::from(i - 1))?;
        }
        out.push(SpaceExpr::loop_of(w.to_expr()?).canonicalize());
    }
    Ok(out)
}

/// The decomposition of `ΩX` for any descriptor, as one expression.
pub fn decompose(spec: &ManifoldSpec) -> Result<SpaceExpr> {
    match spec {
        ManifoldSpec::FourManifold(f) => decompose_four_manifold(f),
        ManifoldSpec::Wall(w) => decompose_wall(w),
        ManifoldSpec::PdComplex(p) => decompose_general(p),
        ManifoldSpec::ConnectedSum(c) => decompose_conn_sum(c),
        ManifoldSpec::Bundle { base, group_spheres } => decompose_bundle(base, group_spheres),
        ManifoldSpec::ConfigSpace { base, points } => {
            Ok(SpaceExpr::product(decompose_config(base, *points)?).canonicalize())
        }
    }
}

/// Whether two manifolds of the same class have homotopy equivalent loop
/// spaces, decided from cohomology ranks.
pub fn loop_equivalent(a: &ManifoldSpec, b: &ManifoldSpec) -> Result<bool> {
    use ManifoldSpec::*;
    match (a, b) {
        (FourManifold(x), FourManifold(y)) => {
            x.validate()?;
            y.validate()?;
            Ok(x.k == y.k)
        }
        (Wall(x), Wall(y)) => {
            x.check_dimension()?;
            y.check_dimension()?;
            if x.n != y.n {
                return Err(Error::Usage(format!("Wall manifolds of different dimensions ({} and {})", x.n, y.n)));
            }
            Ok(x.k == y.k)
        }
        (ConnectedSum(x), ConnectedSum(y)) => {
            x.validate()?;
            y.validate()?;
            if x.n != y.n {
                return Err(Error::Usage(format!("connected sums of different dimensions ({} and {})", x.n, y.n)));
            }
            Ok(x.middle_cells() == y.middle_cells())
        }
        _ => Err(Error::Usage(format!(
            "loop equivalence is only decided within one class, got {} and {}",
            a.kind(),
            b.kind()
        ))),
    }
}

impl ManifoldSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            ManifoldSpec::FourManifold(_) => "four_manifold",
            ManifoldSpec::Wall(_) => "wall",
            ManifoldSpec::PdComplex(_) => "pd_complex",
            ManifoldSpec::ConnectedSum(_) => "connected_sum",
            ManifoldSpec::Bundle { .. } => "bundle",
            ManifoldSpec::ConfigSpace { .. } => "config_space",
        }
    }

    pub fn from_json(v: &Value) -> Result<ManifoldSpec> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Validation("manifold spec must be a JSON object".into()))?;
        let kind = obj
            .get("type")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Validation("manifold spec needs a string \"type\"".into()))?;
        let allowed: &[&str] = match kind {
            "four_manifold" => &["k", "intersection_form"],
            "wall" => &["n", "k"],
            "pd_complex" => &["m", "n", "J"],
            "connected_sum" => &["m", "n", "punctured_skeleton"],
            "bundle" => &["base", "group_spheres"],
            "config_space" => &["base", "points"],
            other => return Err(Error::Validation(format!("unknown manifold type {other:?}"))),
        };
        if let Some(extra) = obj.keys().find(|key| *key != "type" && !allowed.contains(&key.as_str())) {
            return Err(Error::Validation(format!("unexpected field {extra:?} for type {kind}")));
        }
        let spec = match kind {
            "four_manifold" => ManifoldSpec::FourManifold(four_manifold_from(obj)?),
            "wall" => ManifoldSpec::Wall(WallSpec {
                n: uint(obj, "n")?,
                k: uint(obj, "k")?,
            }),
            "pd_complex" => ManifoldSpec::PdComplex(PDSpec {
                m: uint(obj, "m")?,
                n: uint(obj, "n")?,
                j: wedge(obj, "J")?,
            }),
            "connected_sum" => ManifoldSpec::ConnectedSum(conn_sum_from(obj)?),
            "bundle" => {
                let base = match ManifoldSpec::from_json(field(obj, "base")?)? {
                    ManifoldSpec::FourManifold(f) => f,
                    other => {
                        return Err(Error::Validation(format!(
                            "bundle base must be a four_manifold, got {}",
                            other.kind()
                        )))
                    }
                };
                let group_spheres = field(obj, "group_spheres")?
                    .as_array()
                    .ok_or_else(|| Error::Validation("group_spheres must be an array".into()))?
                    .iter()
                    .map(|x| as_u32(x, "group_spheres"))
                    .collect::<Result<Vec<_>>>()?;
                ManifoldSpec::Bundle { base, group_spheres }
            }
            _ => {
                let base = match ManifoldSpec::from_json(field(obj, "base")?)? {
                    ManifoldSpec::ConnectedSum(c) => c,
                    other => {
                        return Err(Error::Validation(format!(
                            "config_space base must be a connected_sum, got {}",
                            other.kind()
                        )))
                    }
                };
                ManifoldSpec::ConfigSpace {
                    base,
                    points: uint(obj, "points")?,
                }
            }
        };
        Ok(spec)
    }

    pub fn to_json(&self) -> Value {
        match self {
            ManifoldSpec::FourManifold(f) => {
                let mut v = json!({"type": "four_manifold", "k": f.k});
                if let Some(form) = &f.form {
                    v["intersection_form"] = form.to_json();
                }
                v
            }
            ManifoldSpec::Wall(w) => json!({"type": "wall", "n": w.n, "k": w.k}),
            ManifoldSpec::PdComplex(p) => {
                json!({"type": "pd_complex", "m": p.m, "n": p.n, "J": js::count_map(&p.j.to_map())})
            }
            ManifoldSpec::ConnectedSum(c) => json!({
                "type": "connected_sum",
                "m": c.m,
                "n": c.n,
                "punctured_skeleton": js::count_map(&c.punctured_skeleton.to_map()),
            }),
            ManifoldSpec::Bundle { base, group_spheres } => json!({
                "type": "bundle",
                "base": ManifoldSpec::FourManifold(base.clone()).to_json(),
                "group_spheres": group_spheres,
            }),
            ManifoldSpec::ConfigSpace { base, points } => json!({
                "type": "config_space",
                "base": ManifoldSpec::ConnectedSum(base.clone()).to_json(),
                "points": points,
            }),
        }
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::Validation(format!("missing field {key:?}")))
}

fn as_u32(v: &Value, key: &str) -> Result<u32> {
    v.as_u64()
        .and_then(|x| x.to_u32())
        .ok_or_else(|| Error::Validation(format!("field {key:?} must be a nonnegative integer")))
}

fn uint(obj: &Map<String, Value>, key: &str) -> Result<u32> {
    as_u32(field(obj, key)?, key)
}

fn wedge(obj: &Map<String, Value>, key: &str) -> Result<SphereWedge> {
    let map = field(obj, key)?
        .as_object()
        .ok_or_else(|| Error::Validation(format!("field {key:?} must map dimensions to counts")))?;
    let mut pairs: BTreeMap<u32, Count> = BTreeMap::new();
    for (d, c) in map {
        let d: u32 = d
            .parse()
            .map_err(|_| Error::Validation(format!("{key}: dimension {d:?} is not an integer")))?;
        let c = js::parse_uint(c)
            .ok_or_else(|| Error::Validation(format!("{key}: count for dimension {d} must be a nonnegative integer")))?;
        if !c.is_zero() {
            pairs.insert(d, c);
        }
    }
    SphereWedge::from_pairs(pairs)
}

fn four_manifold_from(obj: &Map<String, Value>) -> Result<FourManifoldSpec> {
    let k = uint(obj, "k")?;
    let form = obj.get("intersection_form").map(IntersectionForm::from_json).transpose()?;
    let f = FourManifoldSpec { k, form };
    f.validate()?;
    Ok(f)
}

fn conn_sum_from(obj: &Map<String, Value>) -> Result<ConnSumSpec> {
    Ok(ConnSumSpec {
        m: uint(obj, "m")?,
        n: uint(obj, "n")?,
        punctured_skeleton: wedge(obj, "punctured_skeleton")?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{factor_series, normal_form, Series};
    use num_bigint::BigInt;
    use SpaceExpr::*;

    fn w(pairs: &[(u32, u32)]) -> SphereWedge {
        SphereWedge::from_pairs(pairs.iter().copied()).unwrap()
    }

    fn lq(m: u32, k: u32) -> SpaceExpr {
        SpaceExpr::loop_of(Product(vec![Sphere(m), Sphere(k)]))
    }

    #[test]
    fn general_examples() {
        let p = PDSpec::new(3, 6, SphereWedge::point()).unwrap();
        assert_eq!(decompose_general(&p).unwrap(), lq(3, 3));

        let j = w(&[(2, 1), (3, 1)]);
        let p = PDSpec::new(2, 5, j.clone()).unwrap();
        let je = j.to_expr().unwrap();
        let expect = SpaceExpr::product([
            lq(2, 3),
            SpaceExpr::loop_of(SpaceExpr::wedge([je.clone(), SpaceExpr::smash([je, lq(2, 3)])])),
        ])
        .canonicalize();
        assert_eq!(decompose_general(&p).unwrap(), expect);

        assert!(matches!(PDSpec::new(3, 5, SphereWedge::point()), Err(Error::Validation(_))));
        assert!(PDSpec::new(2, 6, w(&[(5, 1)])).is_err());
    }

    #[test]
    fn wall_examples() {
        assert_eq!(decompose_wall(&WallSpec { n: 3, k: 2 }).unwrap(), lq(3, 3));
        let p = PDSpec::new(5, 10, w(&[(5, 2)])).unwrap();
        assert_eq!(
            decompose_wall(&WallSpec { n: 5, k: 4 }).unwrap(),
            decompose_general(&p).unwrap()
        );
        assert_eq!(decompose_wall(&WallSpec { n: 4, k: 3 }), Err(Error::ExcludedCase { n: 4 }));
        assert!(matches!(decompose_wall(&WallSpec { n: 3, k: 1 }), Err(Error::OutOfScope(_))));
    }

    #[test]
    fn conn_sum_examples() {
        // the skeleton must sit inside [m, n - m]
        let bad = ConnSumSpec { m: 3, n: 6, punctured_skeleton: w(&[(2, 1), (4, 1)]) };
        assert!(matches!(decompose_conn_sum(&bad), Err(Error::Validation(_))));
        let ok = ConnSumSpec { m: 2, n: 6, punctured_skeleton: w(&[(2, 1), (4, 1)]) };
        let p = PDSpec::new(2, 6, w(&[(2, 1), (4, 1)])).unwrap();
        assert_eq!(decompose_conn_sum(&ok).unwrap(), decompose_general(&p).unwrap());
        let edge = ConnSumSpec { m: 2, n: 4, punctured_skeleton: w(&[(2, 2)]) };
        assert!(decompose_conn_sum(&edge).is_ok());
    }

    #[test]
    fn four_manifold_examples() {
        let cap = 30;
        let f0 = normal_form(&decompose_four_manifold(&FourManifoldSpec::new(0)).unwrap(), cap).unwrap();
        assert_eq!(f0.spheres.keys().copied().collect::<Vec<_>>(), vec![3]);
        assert_eq!(f0.loop_spheres.keys().copied().collect::<Vec<_>>(), vec![7]);

        let e1 = decompose_four_manifold(&FourManifoldSpec::new(1)).unwrap();
        assert_eq!(e1, Product(vec![Sphere(1), SpaceExpr::loop_of(Sphere(5))]));

        let e2 = decompose_four_manifold(&FourManifoldSpec::new(2)).unwrap();
        let s = factor_series(&normal_form(&e2, 6).unwrap()).unwrap();
        assert_eq!(s, Series::from_coeffs(6, (1..=7).map(BigInt::from)));
        let s22 = factor_series(&normal_form(&lq(2, 2), 6).unwrap()).unwrap();
        assert_eq!(s, s22);
    }

    #[test]
    fn four_manifold_form_is_checked_not_used() {
        let h = IntersectionForm::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        let with = decompose_four_manifold(&FourManifoldSpec::with_form(h)).unwrap();
        assert_eq!(with, decompose_four_manifold(&FourManifoldSpec::new(2)).unwrap());
        let wrong = FourManifoldSpec {
            k: 3,
            form: Some(IntersectionForm::from_i64(&[&[1]]).unwrap()),
        };
        assert!(decompose_four_manifold(&wrong).is_err());
    }

    #[test]
    fn bundle_examples() {
        let e = decompose_bundle(&FourManifoldSpec::new(2), &[3]).unwrap();
        let f = normal_form(&e, 10).unwrap();
        assert_eq!(f.circles, 1);
        assert_eq!(f.loop_spheres.keys().copied().collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(f.loop_sphere_count(3), Count::from(2u32));
        assert!(decompose_bundle(&FourManifoldSpec::new(3), &[3, 5]).is_ok());
        assert!(matches!(
            decompose_bundle(&FourManifoldSpec::new(1), &[3]),
            Err(Error::HypothesisNotMet(_))
        ));
        assert!(decompose_bundle(&FourManifoldSpec::new(2), &[4]).is_err());
    }

    #[test]
    fn config_examples() {
        let c = ConnSumSpec { m: 3, n: 7, punctured_skeleton: w(&[(3, 1), (4, 1)]) };
        let parts = decompose_config(&c, 2).unwrap();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], decompose_conn_sum(&c).unwrap());
        assert_eq!(parts[1], SpaceExpr::loop_of(w(&[(3, 2), (4, 2)]).to_expr().unwrap()));
        assert_eq!(parts[2], SpaceExpr::loop_of(w(&[(3, 2), (4, 2), (6, 1)]).to_expr().unwrap()));
        assert_eq!(decompose_config(&c, 1).unwrap().len(), 2);
        let even = ConnSumSpec { m: 2, n: 4, punctured_skeleton: SphereWedge::point() };
        assert!(matches!(decompose_config(&even, 1), Err(Error::HypothesisNotMet(_))));
    }

    #[test]
    fn equivalence_examples() {
        let four = |k| ManifoldSpec::FourManifold(FourManifoldSpec::new(k));
        assert!(loop_equivalent(&four(2), &four(2)).unwrap());
        assert!(!loop_equivalent(&four(1), &four(2)).unwrap());
        let cs = |pairs: &[(u32, u32)]| {
            ManifoldSpec::ConnectedSum(ConnSumSpec { m: 2, n: 6, punctured_skeleton: w(pairs) })
        };
        assert!(loop_equivalent(&cs(&[(2, 1), (4, 1), (3, 2)]), &cs(&[(3, 2), (2, 1), (4, 1)])).unwrap());
        assert!(!loop_equivalent(&cs(&[(2, 1)]), &cs(&[(3, 1)])).unwrap());
        let wall = ManifoldSpec::Wall(WallSpec { n: 3, k: 2 });
        assert!(matches!(loop_equivalent(&four(2), &wall), Err(Error::Usage(_))));
        let wall5 = ManifoldSpec::Wall(WallSpec { n: 5, k: 2 });
        assert!(matches!(loop_equivalent(&wall, &wall5), Err(Error::Usage(_))));
    }

    #[test]
    fn json_round_trip() {
        let texts = [
            r#"{"type":"four_manifold","k":3}"#,
            r#"{"type":"wall","n":5,"k":4}"#,
            r#"{"type":"pd_complex","m":2,"n":5,"J":{"2":1,"3":1}}"#,
            r#"{"type":"connected_sum","m":2,"n":6,"punctured_skeleton":{"2":1,"4":1}}"#,
            r#"{"type":"bundle","base":{"type":"four_manifold","k":2},"group_spheres":[3]}"#,
            r#"{"type":"config_space","base":{"type":"connected_sum","m":3,"n":7,"punctured_skeleton":{"3":1}},"points":4}"#,
            r#"{"type":"four_manifold","k":2,"intersection_form":[[0,1],[1,0]]}"#,
        ];
        for t in texts {
            let v: Value = serde_json::from_str(t).unwrap();
            let spec = ManifoldSpec::from_json(&v).unwrap();
            assert_eq!(spec.to_json(), v, "{t}");
        }
        let bad: Value = serde_json::from_str(r#"{"type":"wall","n":5,"kk":4}"#).unwrap();
        assert!(ManifoldSpec::from_json(&bad).is_err());
        let bad: Value = serde_json::from_str(r#"{"type":"four_manifold","k":1,"intersection_form":[[2]]}"#).unwrap();
        assert!(ManifoldSpec::from_json(&bad).is_err());
    }
}
