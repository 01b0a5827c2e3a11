use crossdet::geometry::BBox;
use crossdet::proposals::{grid_proposals, recall_audit, GridConfig};
use crossdet::synthdata::{generate_scene, SceneRecipe};
use rand::SeedableRng;

fn main() {
    let recipe = SceneRecipe::default();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(recipe.seed);
    let cfg = GridConfig::default();
    let ps = grid_proposals::<f64>(recipe.canvas, recipe.canvas, &cfg);
    println!("|R| = {}", ps.boxes.len());
    let mut total = 0.0;
    let mut n_boxes = 0usize;
    let mut n_imgs = 0usize;
    let mut worst: f64 = 1.0;
    for i in 0..200 {
        let (_, objects) = generate_scene(&recipe, &mut rng);
        let gt: Vec<BBox<f64>> = objects.iter().map(|(b, _)| *b).collect();
        let r = recall_audit(&ps, &gt, 0.5);
        total += r * gt.len() as f64;
        n_boxes += gt.len();
        n_imgs += 1;
        if r < worst { worst = r; }
        if i < 3 {
            let (img, _) = (crossdet::image_buf::ImageBuf::new(1,1), ());
            let _ = img;
        }
    }
    println!("images {n_imgs}, boxes {n_boxes}, per-box recall {:.4}, worst image {:.3}", total / n_boxes as f64, worst);
}
