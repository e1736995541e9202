//! Matplotlib scripts over the experiment CSVs. Only the script is written;
//! nothing is rendered here.

fn script(csv: &str, body: &str) -> String {
    format!(
        "import csv\nimport matplotlib.pyplot as plt\n\nwith open({csv:?}) as fh:\n    rows = list(csv.DictReader(fh))\n\n{body}"
    )
}

pub(crate) fn concentration(csv: &str) -> String {
    script(
        csv,
        r#"omegas = [float(r["omega"]) for r in rows if r["record"] == "sample"]
median = next(float(r["omega"]) for r in rows if r["record"] == "median")
tails = [r for r in rows if r["record"] == "tail"]

fig, (a, b) = plt.subplots(1, 2, figsize=(10, 4))
a.hist(omegas, bins=40)
a.axvline(median, color="k", linestyle="--")
a.set_xlabel("omega")
a.set_ylabel("games")
rs = [float(r["r"]) for r in tails]
b.semilogy(rs, [max(float(r["empirical_tail"]), 1e-6) for r in tails], "o-", label="empirical")
b.semilogy(rs, [float(r["bound"]) for r in tails], "s--", label="2 exp(-n^2 r^2 / 2)")
b.set_xlabel("r")
b.legend()
fig.tight_layout()
plt.savefig("concentration.png", dpi=150)
"#,
    )
}

pub(crate) fn tightness(csv: &str) -> String {
    script(
        csv,
        r#"fig, (a, b) = plt.subplots(1, 2, figsize=(10, 4))
for family, marker in (("chevet", "o"), ("chevet-block", "s")):
    sel = [r for r in rows if r["family"] == family]
    a.scatter([int(r["c"]) for r in sel], [float(r["ratio"]) for r in sel], marker=marker, label=family, alpha=0.6)
    b.scatter([int(r["c"]) for r in sel], [float(r["scaled"]) for r in sel], marker=marker, label=family, alpha=0.6)
cs = sorted({int(r["c"]) for r in rows})
a.plot(cs, [1.782214 * 2 ** (c / 2) for c in cs], "k--", label="K_G 2^(c/2)")
a.set_xlabel("c")
a.set_ylabel("one-way / classical")
b.set_xlabel("c")
b.set_ylabel("one-way * sqrt(n) / 2^(c/2)")
a.legend()
fig.tight_layout()
plt.savefig("tightness.png", dpi=150)
"#,
    )
}

pub(crate) fn chevet(csv: &str) -> String {
    script(
        csv,
        r#"ns = [int(r["n"]) for r in rows]
means = [float(r["mean"]) for r in rows]
errs = [3 * float(r["std_err"]) for r in rows]
plt.errorbar(ns, means, yerr=errs, fmt="o", label="mean of n^2 omega")
plt.plot(ns, [float(r["bound"]) for r in rows], "k--", label="2 b n^(3/2)")
plt.xscale("log")
plt.yscale("log")
plt.xlabel("n")
plt.legend()
plt.savefig("chevet.png", dpi=150)
"#,
    )
}
