//! Synthetic multi-object scene generator with a base/novel class split.
//!
//! Training samples expose instance boxes for base classes but only
//! image-level labels for novel classes; the novel boxes are written to the
//! same annotation file under a `novel` visibility tier and are only handed
//! out when a loader explicitly opts in as the evaluator.
//!
//! Dataset layout (all text files are line oriented and greppable):
//!
//! ```text
//! root/
//!   manifest.txt            # key = value; recipe + split + provenance
//!   train/
//!     images/img_000000.png
//!     annotations.txt       # image_id class_id x1 y1 x2 y2 tier
//!   test/ ...
//! ```

pub mod glyphs;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::geometry::BBox;
use crate::image_buf::ImageBuf;

#[derive(Debug, Error)]
pub enum DataError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse {path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },
    #[error("index {0} out of range (dataset has {1} samples)")]
    IndexOutOfRange(usize, usize),
}

/// Disjoint base/novel class id sets covering the whole vocabulary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSplit {
    pub base_ids: Vec<usize>,
    pub novel_ids: Vec<usize>,
}

impl ClassSplit {
    /// First `n_base` ids base, the rest novel.
    pub fn first_n_base(n_base: usize, n_classes: usize) -> Self {
        Self {
            base_ids: (0..n_base).collect(),
            novel_ids: (n_base..n_classes).collect(),
        }
    }

    pub fn n_classes(&self) -> usize {
        self.base_ids.len() + self.novel_ids.len()
    }

    pub fn is_base(&self, class_id: usize) -> bool {
        self.base_ids.contains(&class_id)
    }

    pub fn is_novel(&self, class_id: usize) -> bool {
        self.novel_ids.contains(&class_id)
    }

    pub fn validate(&self) -> Result<(), DataError> {
        let base: BTreeSet<_> = self.base_ids.iter().collect();
        let novel: BTreeSet<_> = self.novel_ids.iter().collect();
        if base.intersection(&novel).next().is_some() {
            return Err(DataError::Config(
                "base and novel class sets must be disjoint".into(),
            ));
        }
        let all: BTreeSet<usize> = self.base_ids.iter().chain(&self.novel_ids).copied().collect();
        let expect: BTreeSet<usize> = (0..self.n_classes()).collect();
        if all != expect {
            return Err(DataError::Config(format!(
                "base ∪ novel must cover 0..{} exactly",
                self.n_classes()
            )));
        }
        Ok(())
    }
}

/// Carrier/rider co-occurrence rule: when a carrier-class object is placed,
/// with probability `prob` a rider-class object is drawn overlapping it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiderRule {
    pub carrier: usize,
    pub rider: usize,
    pub prob: f64,
}

/// Everything that determines a dataset, up to the sample counts.
/// Same recipe + seed produces byte-identical output.
#[derive(Debug, Clone, PartialEq)]
pub struct SceneRecipe {
    pub canvas: usize,
    pub n_classes: usize,
    pub objects_per_image: (usize, usize),
    /// Glyph size range in pixels (geometric mean of width and height).
    pub scale_range: (f64, f64),
    pub rider_rules: Vec<RiderRule>,
    /// Shape kinds drawn as dull body + vivid head.
    pub part_kinds: Vec<usize>,
    /// Background clutter density in [0, 1].
    pub clutter: f64,
    pub seed: u64,
}

impl Default for SceneRecipe {
    fn default() -> Self {
        Self {
            canvas: 96,
            n_classes: 20,
            objects_per_image: (2, 4),
            scale_range: (22.0, 50.0),
            rider_rules: vec![
                RiderRule {
                    carrier: 1,
                    rider: 0,
                    prob: 0.75,
                },
                RiderRule {
                    carrier: 11,
                    rider: 10,
                    prob: 0.75,
                },
            ],
            part_kinds: vec![8, 9],
            clutter: 0.5,
            seed: 42,
        }
    }
}

impl SceneRecipe {
    pub fn validate(&self) -> Result<(), DataError> {
        if self.n_classes == 0 || self.n_classes > glyphs::N_KINDS * glyphs::PALETTE_NAMES.len() {
            return Err(DataError::Config(format!(
                "n_classes must lie in 1..={}",
                glyphs::N_KINDS * glyphs::PALETTE_NAMES.len()
            )));
        }
        if self.objects_per_image.0 < 1 || self.objects_per_image.0 > self.objects_per_image.1 {
            return Err(DataError::Config("bad objects_per_image range".into()));
        }
        if self.scale_range.0 < 6.0 || self.scale_range.1 > self.canvas as f64 {
            return Err(DataError::Config("scale_range outside canvas".into()));
        }
        for rule in &self.rider_rules {
            for id in [rule.carrier, rule.rider] {
                if id >= self.n_classes {
                    return Err(DataError::Config(format!(
                        "rider rule references unknown class id {id}"
                    )));
                }
            }
        }
        for &k in &self.part_kinds {
            if k >= glyphs::N_KINDS {
                return Err(DataError::Config(format!("unknown part kind {k}")));
            }
        }
        Ok(())
    }

    pub fn is_part_class(&self, class_id: usize) -> bool {
        self.part_kinds.contains(&(class_id % glyphs::N_KINDS))
    }
}

/// One loaded sample. Hidden novel boxes are only populated when the dataset
/// was opened with the evaluator flag.
#[derive(Debug, Clone)]
pub struct ImageSample {
    pub id: String,
    pub image: ImageBuf,
    pub base_instances: Vec<(BBox<f64>, usize)>,
    pub novel_labels: BTreeSet<usize>,
    pub hidden_novel_instances: Vec<(BBox<f64>, usize)>,
}

impl ImageSample {
    /// Image labels over all classes: base labels derived from instances,
    /// novel labels as annotated.
    pub fn image_labels(&self) -> BTreeSet<usize> {
        let mut labels: BTreeSet<usize> =
            self.base_instances.iter().map(|(_, c)| *c).collect();
        labels.extend(self.novel_labels.iter().copied());
        labels
    }
}

// ---------------------------------------------------------------------------
// scene sampling
// ---------------------------------------------------------------------------

/// Draw one scene: returns the rendered image and all instance annotations.
pub fn generate_scene(
    recipe: &SceneRecipe,
    rng: &mut ChaCha8Rng,
) -> (ImageBuf, Vec<(BBox<f64>, usize)>) {
    let cs = recipe.canvas;
    let mut img = ImageBuf::new(cs, cs);

    // background: dark gray with per-pixel noise
    let base: f64 = rng.gen_range(36.0..46.0);
    for y in 0..cs {
        for x in 0..cs {
            let n = rng.gen_range(-9.0..9.0);
            let v = (base + n).clamp(0.0, 255.0) as u8;
            img.put(x, y, [v, v, v]);
        }
    }

    // clutter: dull low-contrast strokes and dots, drawn under the objects
    let n_clutter = (recipe.clutter * 14.0).round() as usize;
    for _ in 0..n_clutter {
        let gray: f64 = rng.gen_range(58.0..98.0);
        let tint = [
            (gray + rng.gen_range(-12.0..12.0)).clamp(0.0, 255.0) as u8,
            (gray + rng.gen_range(-12.0..12.0)).clamp(0.0, 255.0) as u8,
            (gray + rng.gen_range(-12.0..12.0)).clamp(0.0, 255.0) as u8,
        ];
        let x0 = rng.gen_range(0..cs as i64);
        let y0 = rng.gen_range(0..cs as i64);
        if rng.gen_bool(0.5) {
            // short stroke
            let len = rng.gen_range(4..12);
            let dx = rng.gen_range(-1.0..1.0f64);
            let dy = rng.gen_range(-1.0..1.0f64);
            let norm = (dx * dx + dy * dy).sqrt().max(1e-6);
            for t in 0..len {
                let x = x0 + (dx / norm * t as f64).round() as i64;
                let y = y0 + (dy / norm * t as f64).round() as i64;
                img.put_clipped(x, y, tint);
            }
        } else {
            // small dot
            let r = rng.gen_range(1..3);
            for dy in -r..=r {
                for dx in -r..=r {
                    if dx * dx + dy * dy <= r * r {
                        img.put_clipped(x0 + dx, y0 + dy, tint);
                    }
                }
            }
        }
    }

    // objects
    let n_objects = rng.gen_range(recipe.objects_per_image.0..=recipe.objects_per_image.1);
    let mut placed: Vec<(BBox<f64>, usize)> = Vec::new();
    let mut guard = 0;
    while placed.len() < n_objects && guard < 200 {
        guard += 1;
        let class_id = rng.gen_range(0..recipe.n_classes);
        let Some(bbox) = sample_box(recipe, class_id, rng, &placed) else {
            continue;
        };
        placed.push((bbox, class_id));

        // co-occurrence: a rider overlapping the carrier's upper region
        for rule in &recipe.rider_rules {
            if rule.carrier == class_id && rng.gen_bool(rule.prob) {
                let rider_box = place_rider(recipe, &bbox, rng);
                placed.push((rider_box, rule.rider));
                break;
            }
        }
    }

    // render in placement order: riders land on top of their carriers
    for (bbox, class_id) in &placed {
        draw_glyph(&mut img, recipe, *bbox, *class_id, rng);
    }

    (img, placed)
}

/// Integer-aligned box for a new object, rejecting heavy overlap with
/// already placed ones.
fn sample_box(
    recipe: &SceneRecipe,
    class_id: usize,
    rng: &mut ChaCha8Rng,
    placed: &[(BBox<f64>, usize)],
) -> Option<BBox<f64>> {
    let cs = recipe.canvas as f64;
    for _ in 0..24 {
        let s = rng.gen_range(recipe.scale_range.0..recipe.scale_range.1);
        let aspect: f64 = if recipe.is_part_class(class_id) {
            rng.gen_range(0.55..0.68)
        } else {
            rng.gen_range(0.82..1.22)
        };
        let w = (s * aspect.sqrt()).round().max(8.0);
        let h = (s / aspect.sqrt()).round().max(8.0);
        if w + 2.0 >= cs || h + 2.0 >= cs {
            continue;
        }
        let x1 = rng.gen_range(1..=(cs - w - 1.0) as i64) as f64;
        let y1 = rng.gen_range(1..=(cs - h - 1.0) as i64) as f64;
        let bbox = BBox::of(x1, y1, x1 + w, y1 + h);
        let crowded = placed
            .iter()
            .any(|(b, _)| crate::geometry::iou_valid(b, &bbox) > 0.35);
        if !crowded {
            return Some(bbox);
        }
    }
    None
}

/// Rider box: roughly half the carrier's size, straddling its top edge.
fn place_rider(recipe: &SceneRecipe, carrier: &BBox<f64>, rng: &mut ChaCha8Rng) -> BBox<f64> {
    let cs = recipe.canvas as f64;
    let w = (carrier.width() * rng.gen_range(0.45..0.6)).round().max(8.0);
    let h = (carrier.height() * rng.gen_range(0.5..0.65)).round().max(8.0);
    let cx = carrier.cx() + carrier.width() * rng.gen_range(-0.12..0.12);
    // bottom of the rider sits a bit below the carrier's top edge
    let y2 = carrier.y1 + carrier.height() * rng.gen_range(0.4..0.55);
    let mut x1 = (cx - w / 2.0).round();
    let mut y1 = (y2.round() - h).round();
    x1 = x1.clamp(0.0, cs - w);
    y1 = y1.clamp(0.0, cs - h);
    BBox::of(x1, y1, x1 + w, y1 + h)
}

fn draw_glyph(
    img: &mut ImageBuf,
    recipe: &SceneRecipe,
    bbox: BBox<f64>,
    class_id: usize,
    rng: &mut ChaCha8Rng,
) {
    let kind = class_id % glyphs::N_KINDS;
    let color = glyphs::class_color(class_id);
    let is_part = recipe.is_part_class(class_id);
    let (x1, y1) = (bbox.x1 as i64, bbox.y1 as i64);
    let (w, h) = (bbox.width(), bbox.height());
    for py in y1..(bbox.y2 as i64) {
        for px in x1..(bbox.x2 as i64) {
            let u = (px as f64 + 0.5 - bbox.x1) / w;
            let v = (py as f64 + 0.5 - bbox.y1) / h;
            let fill = if is_part {
                match glyphs::inside_part(kind, u, v, w, h) {
                    Some(true) => Some(color),
                    Some(false) => Some(glyphs::BODY_COLOR),
                    None => None,
                }
            } else {
                glyphs::inside(kind, u, v).then_some(color)
            };
            if let Some(c) = fill {
                let jitter = rng.gen_range(-10.0..10.0);
                let noisy = [
                    (c[0] as f64 + jitter).clamp(0.0, 255.0) as u8,
                    (c[1] as f64 + jitter).clamp(0.0, 255.0) as u8,
                    (c[2] as f64 + jitter).clamp(0.0, 255.0) as u8,
                ];
                img.put_clipped(px, py, noisy);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

const MANIFEST_VERSION: u32 = 1;

/// Generate and write the train and test splits under `out_dir`.
pub fn generate_dataset(
    recipe: &SceneRecipe,
    split: &ClassSplit,
    n_train: usize,
    n_test: usize,
    out_dir: &Path,
) -> Result<(), DataError> {
    recipe.validate()?;
    split.validate()?;
    if split.n_classes() != recipe.n_classes {
        return Err(DataError::Config(format!(
            "split covers {} classes but recipe declares {}",
            split.n_classes(),
            recipe.n_classes
        )));
    }
    if n_train < 1 || n_test < 1 {
        return Err(DataError::Config("n_train and n_test must be >= 1".into()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(recipe.seed);
    write_manifest(recipe, split, n_train, n_test, out_dir)?;
    write_split(recipe, split, n_train, &out_dir.join("train"), &mut rng)?;
    write_split(recipe, split, n_test, &out_dir.join("test"), &mut rng)?;
    Ok(())
}

fn write_split(
    recipe: &SceneRecipe,
    split: &ClassSplit,
    n: usize,
    dir: &Path,
    rng: &mut ChaCha8Rng,
) -> Result<(), DataError> {
    let images_dir = dir.join("images");
    std::fs::create_dir_all(&images_dir)?;
    let mut ann = String::new();
    for i in 0..n {
        let id = format!("img_{i:06}");
        let (img, objects) = generate_scene(recipe, rng);
        img.save_png(&images_dir.join(format!("{id}.png")))?;
        for (bbox, class_id) in &objects {
            let tier = if split.is_base(*class_id) { "base" } else { "novel" };
            writeln!(
                ann,
                "{id} {class_id} {} {} {} {} {tier}",
                bbox.x1, bbox.y1, bbox.x2, bbox.y2
            )
            .expect("write to string");
        }
    }
    let mut f = std::fs::File::create(dir.join("annotations.txt"))?;
    f.write_all(ann.as_bytes())?;
    Ok(())
}

fn join_usize(v: &[usize]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn write_manifest(
    recipe: &SceneRecipe,
    split: &ClassSplit,
    n_train: usize,
    n_test: usize,
    out_dir: &Path,
) -> Result<(), DataError> {
    std::fs::create_dir_all(out_dir)?;
    let mut s = String::new();
    let rules = recipe
        .rider_rules
        .iter()
        .map(|r| format!("{}:{}:{}", r.carrier, r.rider, r.prob))
        .collect::<Vec<_>>()
        .join(",");
    let names = (0..recipe.n_classes)
        .map(glyphs::class_name)
        .collect::<Vec<_>>()
        .join(",");
    writeln!(s, "format_version = {MANIFEST_VERSION}").unwrap();
    writeln!(s, "seed = {}", recipe.seed).unwrap();
    writeln!(s, "canvas = {}", recipe.canvas).unwrap();
    writeln!(s, "n_classes = {}", recipe.n_classes).unwrap();
    writeln!(s, "objects_min = {}", recipe.objects_per_image.0).unwrap();
    writeln!(s, "objects_max = {}", recipe.objects_per_image.1).unwrap();
    writeln!(s, "scale_min = {}", recipe.scale_range.0).unwrap();
    writeln!(s, "scale_max = {}", recipe.scale_range.1).unwrap();
    writeln!(s, "clutter = {}", recipe.clutter).unwrap();
    writeln!(s, "part_kinds = {}", join_usize(&recipe.part_kinds)).unwrap();
    writeln!(s, "rider_rules = {rules}").unwrap();
    writeln!(s, "base_ids = {}", join_usize(&split.base_ids)).unwrap();
    writeln!(s, "novel_ids = {}", join_usize(&split.novel_ids)).unwrap();
    writeln!(s, "n_train = {n_train}").unwrap();
    writeln!(s, "n_test = {n_test}").unwrap();
    writeln!(s, "class_names = {names}").unwrap();
    std::fs::write(out_dir.join("manifest.txt"), s)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// loading
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Split {
    Train,
    Test,
}

impl Split {
    pub fn dir_name(&self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Test => "test",
        }
    }
}

#[derive(Debug, Clone)]
struct Record {
    class_id: usize,
    bbox: BBox<f64>,
    novel: bool,
}

/// Open dataset handle for one split. `evaluator = true` additionally exposes
/// the hidden novel instance boxes.
#[derive(Debug)]
pub struct Dataset {
    root: PathBuf,
    split: Split,
    evaluator: bool,
    pub recipe: SceneRecipe,
    pub class_split: ClassSplit,
    pub class_names: Vec<String>,
    ids: Vec<String>,
    records: Vec<Vec<Record>>,
}

impl Dataset {
    pub fn open(root: &Path, split: Split, evaluator: bool) -> Result<Self, DataError> {
        let manifest = parse_manifest(&root.join("manifest.txt"))?;
        let (recipe, class_split, n_train, n_test, class_names) = manifest;
        let n = match split {
            Split::Train => n_train,
            Split::Test => n_test,
        };
        let ids: Vec<String> = (0..n).map(|i| format!("img_{i:06}")).collect();

        let ann_path = root.join(split.dir_name()).join("annotations.txt");
        let file = std::fs::File::open(&ann_path)?;
        let mut records: Vec<Vec<Record>> = vec![Vec::new(); n];
        for (ln, line) in std::io::BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let parse_err = |msg: &str| DataError::Parse {
                path: ann_path.display().to_string(),
                line: ln + 1,
                msg: msg.to_string(),
            };
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 7 {
                return Err(parse_err("expected 7 fields"));
            }
            let id = parts[0];
            let index: usize = id
                .strip_prefix("img_")
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| parse_err("bad image id"))?;
            if index >= n {
                return Err(parse_err("image id out of declared range"));
            }
            let class_id: usize = parts[1].parse().map_err(|_| parse_err("bad class id"))?;
            if class_id >= recipe.n_classes {
                return Err(parse_err("class id out of range"));
            }
            let coords: Vec<f64> = parts[2..6]
                .iter()
                .map(|s| s.parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|_| parse_err("bad coordinate"))?;
            let bbox = BBox::new(coords[0], coords[1], coords[2], coords[3])
                .map_err(|e| parse_err(&e.to_string()))?;
            let novel = match parts[6] {
                "base" => false,
                "novel" => true,
                other => return Err(parse_err(&format!("unknown tier {other}"))),
            };
            if novel != class_split.is_novel(class_id) {
                return Err(parse_err("tier inconsistent with class split"));
            }
            records[index].push(Record {
                class_id,
                bbox,
                novel,
            });
        }

        Ok(Self {
            root: root.to_path_buf(),
            split,
            evaluator,
            recipe,
            class_split,
            class_names,
            ids,
            records,
        })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn load(&self, index: usize) -> Result<ImageSample, DataError> {
        if index >= self.ids.len() {
            return Err(DataError::IndexOutOfRange(index, self.ids.len()));
        }
        let id = &self.ids[index];
        let img_path = self
            .root
            .join(self.split.dir_name())
            .join("images")
            .join(format!("{id}.png"));
        let image = ImageBuf::load_png(&img_path)?;

        let mut base_instances = Vec::new();
        let mut novel_labels = BTreeSet::new();
        let mut hidden = Vec::new();
        for r in &self.records[index] {
            if r.novel {
                novel_labels.insert(r.class_id);
                if self.evaluator {
                    hidden.push((r.bbox, r.class_id));
                }
            } else {
                base_instances.push((r.bbox, r.class_id));
            }
        }
        Ok(ImageSample {
            id: id.clone(),
            image,
            base_instances,
            novel_labels,
            hidden_novel_instances: hidden,
        })
    }

    /// All ground-truth instances of one image (evaluator only).
    pub fn all_instances(&self, index: usize) -> Result<Vec<(BBox<f64>, usize)>, DataError> {
        if !self.evaluator {
            return Err(DataError::Config(
                "ground-truth access requires the evaluator flag".into(),
            ));
        }
        if index >= self.ids.len() {
            return Err(DataError::IndexOutOfRange(index, self.ids.len()));
        }
        Ok(self.records[index]
            .iter()
            .map(|r| (r.bbox, r.class_id))
            .collect())
    }
}

/// Convenience wrapper matching the one-sample access pattern.
pub fn load_sample(
    root: &Path,
    split: Split,
    index: usize,
    evaluator: bool,
) -> Result<ImageSample, DataError> {
    Dataset::open(root, split, evaluator)?.load(index)
}

type ManifestData = (SceneRecipe, ClassSplit, usize, usize, Vec<String>);

fn parse_manifest(path: &Path) -> Result<ManifestData, DataError> {
    let text = std::fs::read_to_string(path)?;
    let mut kv = std::collections::BTreeMap::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| DataError::Parse {
            path: path.display().to_string(),
            line: ln + 1,
            msg: "expected key = value".into(),
        })?;
        kv.insert(k.trim().to_string(), v.trim().to_string());
    }
    let get = |key: &str| -> Result<&String, DataError> {
        kv.get(key).ok_or_else(|| DataError::Parse {
            path: path.display().to_string(),
            line: 0,
            msg: format!("missing key {key}"),
        })
    };
    let parse_list = |s: &str| -> Vec<usize> {
        s.split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse().expect("usize list"))
            .collect()
    };
    let version: u32 = get("format_version")?.parse().unwrap_or(0);
    if version != MANIFEST_VERSION {
        return Err(DataError::Config(format!(
            "unsupported manifest version {version}"
        )));
    }
    let rider_rules = get("rider_rules")?
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let parts: Vec<&str> = t.split(':').collect();
            RiderRule {
                carrier: parts[0].parse().expect("carrier id"),
                rider: parts[1].parse().expect("rider id"),
                prob: parts[2].parse().expect("rider prob"),
            }
        })
        .collect();
    let recipe = SceneRecipe {
        canvas: get("canvas")?.parse().expect("canvas"),
        n_classes: get("n_classes")?.parse().expect("n_classes"),
        objects_per_image: (
            get("objects_min")?.parse().expect("objects_min"),
            get("objects_max")?.parse().expect("objects_max"),
        ),
        scale_range: (
            get("scale_min")?.parse().expect("scale_min"),
            get("scale_max")?.parse().expect("scale_max"),
        ),
        rider_rules,
        part_kinds: parse_list(get("part_kinds")?),
        clutter: get("clutter")?.parse().expect("clutter"),
        seed: get("seed")?.parse().expect("seed"),
    };
    let split = ClassSplit {
        base_ids: parse_list(get("base_ids")?),
        novel_ids: parse_list(get("novel_ids")?),
    };
    let n_train = get("n_train")?.parse().expect("n_train");
    let n_test = get("n_test")?.parse().expect("n_test");
    let names = get("class_names")?.split(',').map(str::to_string).collect();
    Ok((recipe, split, n_train, n_test, names))
}

/// FNV-1a digest over every file in the dataset directory, path-ordered.
/// Used by determinism checks.
pub fn dataset_digest(root: &Path) -> Result<u64, DataError> {
    let mut files = Vec::new();
    collect_files(root, &mut files)?;
    files.sort();
    let mut hash: u64 = 0xcbf29ce484222325;
    let mut absorb = |bytes: &[u8]| {
        for &b in bytes {
            hash ^= b as u64;
            hash = hash.wrapping_mul(0x100000001b3);
        }
    };
    for f in files {
        let rel = f.strip_prefix(root).unwrap().to_string_lossy().into_owned();
        absorb(rel.as_bytes());
        absorb(&std::fs::read(&f)?);
    }
    Ok(hash)
}

fn collect_files(dir: &Path, out: &mut Vec<PathBuf>) -> std::io::Result<()> {
    for entry in std::fs::read_dir(dir)? {
        let entry = entry?;
        let path = entry.path();
        if path.is_dir() {
            collect_files(&path, out)?;
        } else {
            out.push(path);
        }
    }
    Ok(())
}
