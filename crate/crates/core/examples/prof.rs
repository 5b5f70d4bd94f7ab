fn main() {
    let t0 = std::time::Instant::now();
    let lines = arithom::selftest::run_all(0).unwrap();
    for l in &lines {
        println!("{} {} - {}", if l.pass { "pass" } else { "FAIL" }, l.name, l.detail);
    }
    eprintln!("total: {:?}, all pass: {}", t0.elapsed(), arithom::selftest::all_pass(&lines));
}
