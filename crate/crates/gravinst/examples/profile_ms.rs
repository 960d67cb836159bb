use std::time::Instant;

fn main() {
    let cat = gravinst::fixtures::Catalog::load_default().unwrap();
    for label in ["1A", "1B", "1C", "2A", "2D", "2E", "3A", "3C", "3E", "3G", "3H", "3J", "3L", "3M"] {
        let t0 = Instant::now();
        let md = cat.moment_data_of(label).unwrap();
        let ms = gravinst::afunc::min_scalar(&md);
        let t1 = Instant::now();
        let _ = gravinst::afunc::t_oracle(&md).unwrap();
        let t2 = Instant::now();
        match &ms {
            gravinst::afunc::MinScalar::Exact(f) => {
                let rep = gravinst::afunc::positivity_report(
                    f,
                    &md.domain,
                    &gravinst::afunc::PositivityOptions::default(),
                )
                .unwrap();
                eprintln!(
                    "{label}: min_scalar {:.2}s, oracle {:.2}s, positivity {:.2}s -> {rep}",
                    (t1 - t0).as_secs_f64(),
                    (t2 - t1).as_secs_f64(),
                    t2.elapsed().as_secs_f64()
                );
            }
            gravinst::afunc::MinScalar::Degenerate => {
                eprintln!("{label}: degenerate ({:.2}s)", (t1 - t0).as_secs_f64());
            }
        }
    }
}
