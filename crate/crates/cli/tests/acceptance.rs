//! Acceptance checks driven through the `gadgetopt` binary where the command
//! line exposes the operation, and through the library otherwise.
//!
//! Runs as a plain binary (`harness = false`) so the summary is always shown.

use std::f64::consts::{PI, TAU};
use std::fs;
use std::process::{Command, ExitCode, Output};
use std::time::{Duration, Instant};

use gadgetopt::anneal::exhaustive_minimum;
use gadgetopt::circuit::{euler_xzx_to_zxz, lower_to_basis, Gate};
use gadgetopt::gadget::commutes;
use gadgetopt::oracle::{phase_aligned_error, unitary_of_circuit, unitary_of_gadget, Complex, Unitary};
use gadgetopt::pipeline::{cnot_layer, mppp_period, AnsatzKind};
use gadgetopt::transform::{extract, CnotCircuit};
use gadgetopt::{Basis, BitMatrix, BitVec, GadgetEntry, GateCircuit, NormalForm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

const WORKED: &str = "qubits 3
zgadget 0.1 110
xgadget 0.2 111
xgadget 0.3 110
zgadget 0.4 100
zgadget 0.5 110
";

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gadgetopt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn field(out: &Output, key: &str) -> Option<String> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key}=")).map(str::to_string))
}

fn worked_example() -> Outcome {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("worked.txt");
    fs::write(&path, WORKED).unwrap();
    let o = run(&["anneal", path.to_str().unwrap()]);
    let initial = field(&o, "initial_energy").and_then(|s| s.parse::<usize>().ok());
    let best = field(&o, "best_energy").and_then(|s| s.parse::<usize>().ok());

    let nf: NormalForm = WORKED.parse().unwrap();
    let (lz, lx) = nf.gadgets.leg_matrices();
    let matrices = lz == BitMatrix::from_rows(&[[1, 1, 1], [1, 0, 1], [0, 0, 0]])
        && lx == BitMatrix::from_rows(&[[1, 1], [1, 1], [1, 0]]);
    let (_, opt) = exhaustive_minimum(&lz, &lx).unwrap();
    let pass = o.status.success() && matrices && initial == Some(10) && best.is_some_and(|b| b <= 6 && b == opt);
    outcome(
        pass,
        format!("matrices {}, energy {initial:?} -> {best:?}, exhaustive {opt}", if matrices { "match" } else { "differ" }),
    )
}

fn homomorphism() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let mut fails = 0;
    for i in 0..1000 {
        let n = 2 + i % 7;
        let mut c = CnotCircuit::new(n);
        for _ in 0..rng.gen_range(0..=30) {
            let a = rng.gen_range(0..n);
            c.push(a, (a + rng.gen_range(1..n)) % n);
        }
        if c.h_x() != c.h_z().inverse_transpose().unwrap() {
            fails += 1;
        }
    }
    outcome(fails == 0, format!("{fails} failures in 1000 circuits"))
}

fn random_gate(n: usize, rng: &mut ChaCha8Rng) -> Gate {
    let q = rng.gen_range(0..n);
    let angle = rng.gen_range(-PI..PI);
    if n == 1 {
        return match rng.gen_range(0..4) {
            0 => Gate::rz(angle, q),
            1 => Gate::rx(angle, q),
            2 => Gate::Ry { angle, qubit: q },
            _ => Gate::H { qubit: q },
        };
    }
    let p = (q + rng.gen_range(1..n)) % n;
    match rng.gen_range(0..10) {
        0 => Gate::rz(angle, q),
        1 => Gate::rx(angle, q),
        2 => Gate::Ry { angle, qubit: q },
        3 => Gate::H { qubit: q },
        4 | 5 => Gate::cnot(q, p),
        6 => Gate::Cz { a: q, b: p },
        7 => Gate::Crz { angle, control: q, target: p },
        8 => Gate::Crx { angle, control: q, target: p },
        _ => Gate::Cu1 { angle, a: q, b: p },
    }
}

fn semantics() -> Outcome {
    let dir = TempDir::new().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(62);
    let mut fails = 0;
    for i in 0..200 {
        let n = 1 + i % 6;
        let mut c = GateCircuit::new(n);
        for _ in 0..rng.gen_range(0..=40) {
            c.push(random_gate(n, &mut rng));
        }
        let input = dir.path().join(format!("c{i}.txt"));
        let output = dir.path().join(format!("o{i}.txt"));
        fs::write(&input, lower_to_basis(&c).to_text()).unwrap();
        let (inp, out) = (input.to_str().unwrap(), output.to_str().unwrap());
        let seed = i.to_string();
        let opt = run(&["optimize", inp, "-o", out, "--seed", &seed, "--iterations", "1000", "--attempts", "4", "--no-verify"]);
        let ok = opt.status.success() && run(&["verify", inp, out]).status.success();
        if !ok {
            fails += 1;
        }
    }
    outcome(fails == 0, format!("{fails} failures in 200 circuits"))
}

fn random_entry(n: usize, rng: &mut ChaCha8Rng) -> GadgetEntry {
    let mut legs = BitVec::zeros(n);
    while legs.is_zero() {
        for q in 0..n {
            legs.set(q, rng.gen());
        }
    }
    let basis = if rng.gen() { Basis::Z } else { Basis::X };
    GadgetEntry::new(basis, rng.gen_range(0.3..PI - 0.3), legs).unwrap()
}

fn commutation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(63);
    let mut fails = 0;
    for i in 0..500 {
        let n = 1 + i % 4;
        let (a, b) = (random_entry(n, &mut rng), random_entry(n, &mut rng));
        let (ua, ub) = (unitary_of_gadget(n, &a).unwrap(), unitary_of_gadget(n, &b).unwrap());
        let norm = ua.matmul(&ub).max_diff(&ub.matmul(&ua));
        let ok = if commutes(&a, &b) { norm < 1e-9 } else { norm > 1e-3 };
        if !ok {
            fails += 1;
        }
    }
    outcome(fails == 0, format!("{fails} failures in 500 pairs"))
}

fn periodicity() -> Outcome {
    let powers = [
        BitMatrix::from_rows(&[[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [0, 0, 0, 1]]),
        BitMatrix::from_rows(&[[1, 0, 1, 0], [0, 1, 0, 1], [0, 0, 1, 0], [0, 0, 0, 1]]),
        BitMatrix::from_rows(&[[1, 1, 1, 1], [0, 1, 1, 1], [0, 0, 1, 1], [0, 0, 0, 1]]),
    ];
    let layer = cnot_layer(AnsatzKind::Staircase, 4).unwrap();
    let mut figure_ok = true;
    for (k, want) in powers.iter().enumerate() {
        let mut c = GateCircuit::new(4);
        for q in 0..4 {
            c.push(Gate::rz(0.2 * (q + 1) as f64, q));
        }
        for _ in 0..=k {
            c.append(&layer.to_gate_circuit());
        }
        let nf = extract(&c).unwrap();
        let moved = nf.gadgets.apply_action(&nf.tail.h_z()).unwrap();
        figure_ok &= &moved.leg_matrices().0 == want;
    }
    let period = mppp_period(&layer).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(65);
    let mut fails = 0;
    for i in 0..1000 {
        let n = 1 + i % 16;
        let mut b = BitMatrix::identity(n);
        for r in 0..n {
            for c in r + 1..n {
                b.set(r, c, rng.gen());
            }
        }
        if !b.pow(n.next_power_of_two() as u64).unwrap().is_identity() {
            fails += 1;
        }
    }
    outcome(
        figure_ok && period == 4 && fails == 0,
        format!("staircase powers {}, period {period}, {fails} triangular failures", if figure_ok { "match" } else { "differ" }),
    )
}

fn euler() -> Outcome {
    let one_qubit = |gates: Vec<Gate>| unitary_of_circuit(&GateCircuit::from_gates(1, gates).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let (a1, a2, a3) = (rng.gen_range(-TAU..TAU), rng.gen_range(-TAU..TAU), rng.gen_range(-TAU..TAU));
        let (b1, b2, b3) = euler_xzx_to_zxz(a1, a2, a3);
        let u = one_qubit(vec![Gate::rx(a1, 0), Gate::rz(a2, 0), Gate::rx(a3, 0)]);
        let v = one_qubit(vec![Gate::rz(b1, 0), Gate::rx(b2, 0), Gate::rz(b3, 0)]);
        worst = worst.max(phase_aligned_error(&u, &v));
    }
    outcome(worst < 1e-9, format!("worst error {worst:.1e}"))
}

fn benchmark_trend() -> Outcome {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("bench.csv");
    let o = run(&["bench", "--qubits", "8", "--gadgets", "10", "--layers", "1,2,5,10", "--samples", "10", "--csv", csv.to_str().unwrap()]);
    if !o.status.success() {
        return outcome(false, String::from_utf8_lossy(&o.stderr).into_owned());
    }
    let text = fs::read_to_string(&csv).unwrap();
    let mut sums = [(0.0f64, 0.0f64); 4];
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        if f[5] != "cnot_depth" {
            continue;
        }
        let slot = match f[3] {
            "1" => 0,
            "2" => 1,
            "5" => 2,
            _ => 3,
        };
        sums[slot].0 += f[6].parse::<f64>().unwrap();
        sums[slot].1 += f[7].parse::<f64>().unwrap();
    }
    let savings: Vec<f64> = sums.iter().map(|(b, a)| 1.0 - a / b).collect();
    let monotone = savings.windows(2).all(|w| w[1] >= w[0]);
    let shown: Vec<String> = savings.iter().map(|s| format!("{:.0}%", 100.0 * s)).collect();
    outcome(monotone && savings[3] >= 0.40, format!("depth savings at 1,2,5,10 layers: {}", shown.join(" ")))
}

fn diag4(d: [Complex<f64>; 4]) -> Vec<Vec<Complex<f64>>> {
    let z = Complex::new(0.0, 0.0);
    (0..4).map(|i| (0..4).map(|j| if i == j { d[i] } else { z }).collect()).collect()
}

fn gate_conversion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(67);
    let (one, z) = (Complex::new(1.0, 0.0), Complex::new(0.0, 0.0));
    let mut fails = 0;
    let mut check = |gate: Gate, want: Vec<Vec<Complex<f64>>>| {
        let c = lower_to_basis(&GateCircuit::from_gates(2, vec![gate]).unwrap());
        let err = phase_aligned_error(&unitary_of_circuit(&c).unwrap(), &Unitary::from_rows(want));
        if err.is_nan() || err >= 1e-9 {
            fails += 1;
        }
    };
    for _ in 0..50 {
        let t: f64 = rng.gen_range(-TAU..TAU);
        check(Gate::Cu1 { angle: t, a: 0, b: 1 }, diag4([one, one, one, Complex::from_polar(1.0, t)]));
        check(
            Gate::Crz { angle: t, control: 0, target: 1 },
            diag4([one, one, Complex::from_polar(1.0, -t / 2.0), Complex::from_polar(1.0, t / 2.0)]),
        );
        let (cs, sn) = (Complex::new((t / 2.0).cos(), 0.0), Complex::new(0.0, -(t / 2.0).sin()));
        check(
            Gate::Crx { angle: t, control: 0, target: 1 },
            vec![vec![one, z, z, z], vec![z, one, z, z], vec![z, z, cs, sn], vec![z, z, sn, cs]],
        );
    }
    outcome(fails == 0, format!("{fails} failures in 150 gates"))
}

type Check = fn() -> Outcome;

fn main() -> ExitCode {
    let criteria: [(&str, Option<Duration>, Check); 8] = [
        ("worked example", Some(Duration::from_secs(1)), worked_example),
        ("h_x is the inverse transpose of h_z", Some(Duration::from_secs(5)), homomorphism),
        ("optimize preserves semantics", Some(Duration::from_secs(120)), semantics),
        ("commutation predicate", None, commutation),
        ("staircase periodicity", None, periodicity),
        ("euler decomposition", None, euler),
        ("benchmark trend", Some(Duration::from_secs(600)), benchmark_trend),
        ("gate conversion", None, gate_conversion),
    ];
    let mut all = true;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let took = start.elapsed();
        let pass = o.pass && limit.is_none_or(|l| took <= l);
        all &= pass;
        let budget = limit.map(|l| format!(" (limit {}s)", l.as_secs())).unwrap_or_default();
        println!(
            "criterion {}: {} {name}: {} [{:.2}s{budget}]",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            took.as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
