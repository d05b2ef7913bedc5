//! Drive the command line in-process and print its JSON report.

fn main() {
    let file = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/ex5_1.toml");
    let args = ["varicheck", "analyze", file, "--theorem", "4.2", "--lambda", "0.5", "--eta", "2", "--interval", "0", "1", "--json"];
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = varicheck::cli::run_cli(args, &mut out, &mut err);
    let doc: serde_json::Value = serde_json::from_slice(&out).expect("valid JSON");
    let r = &doc["reports"][0];
    println!("exit code {code}");
    println!("{} {} verdict={} value={}", r["theorem"], r["condition"], r["verdict"], r["tested_value"]);
    println!("witness: {}", r["witness"]);
}
