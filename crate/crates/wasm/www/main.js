import init, { synthesize, parseCsv, scalogramSvg, hurstSvg, multifractalSvg } from "./pkg/streamlens_wasm.js";

const $ = (id) => document.getElementById(id);

function series() {
  const text = $("csv").value.trim();
  if (text) return parseCsv(text);
  const kind = $("kind").value;
  return synthesize(kind, Number($("length").value), Number($("seed").value), Number($("param").value));
}

function run() {
  $("status").textContent = "";
  try {
    const values = series();
    const op = document.querySelector("input[name=op]:checked").value;
    let svg;
    if (op === "scalogram") {
      svg = scalogramSvg(values, $("wavelet").value, 48);
    } else if (op === "hurst") {
      svg = hurstSvg(values);
    } else {
      svg = multifractalSvg(values, $("method").value, $("increments").checked);
    }
    $("plot").innerHTML = svg;
  } catch (e) {
    $("status").textContent = e.message ?? String(e);
  }
}

// A cascade is a measure: analyse it as increments by default.
$("kind").addEventListener("change", () => {
  $("increments").checked = $("kind").value === "binomial_cascade";
});

await init();
$("run").addEventListener("click", run);
for (const el of document.querySelectorAll("input[name=op]")) el.addEventListener("change", run);
run();
