use crossdet::synthdata::{generate_scene, SceneRecipe};
use rand::SeedableRng;

fn main() {
    let recipe = SceneRecipe::default();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
    for i in 0..6 {
        let (mut img, objects) = generate_scene(&recipe, &mut rng);
        for (b, c) in &objects {
            println!("scene {i}: class {c} at ({:.0},{:.0},{:.0},{:.0})", b.x1, b.y1, b.x2, b.y2);
            img.draw_rect(b, [255, 255, 255]);
        }
        img.save_png(std::path::Path::new(&format!("/tmp/scene_{i}.png"))).unwrap();
    }
}
