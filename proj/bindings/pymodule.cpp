#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bergtoep/bergman.hpp"

namespace py = pybind11;
using namespace bergtoep;

namespace {

Group group_from_string(const std::string& g) {
  if (g == "uun") return Group::UUn;
  if (g == "unl") return Group::UnL;
  if (g == "unr") return Group::UnR;
  throw ConfigError("group must be one of uun, unl, unr");
}

const IsotypicComponent& find_component(const std::vector<IsotypicComponent>& comps,
                                        std::vector<int> mu) {
  for (const auto& c : comps) {
    std::vector<int> m = c.mu.m;
    while (!m.empty() && m.back() == 0) m.pop_back();
    std::vector<int> want = mu;
    while (!want.empty() && want.back() == 0) want.pop_back();
    if (m == want) return c;
  }
  throw ConfigError("no component with the requested mu");
}

}  // namespace

PYBIND11_MODULE(_bergtoep, m) {
  m.doc() = "Toeplitz operators with radial-like symbols on weighted Bergman "
            "spaces over the matrix domain Z*Z < I";

  py::register_exception<SymbolSyntaxError>(m, "SymbolSyntaxError");
  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<GramNotPD>(m, "GramNotPDError");
  py::register_exception<MultiplicityViolation>(m, "MultiplicityViolationError");
  py::register_exception<DimensionMismatch>(m, "DimensionMismatchError");

  m.def("bergman_kernel", &bergman_kernel, py::arg("Z"), py::arg("W"), py::arg("lam"),
        "Weighted Bergman kernel det(I - Z W*)^(-lambda)");

  m.def(
      "haar_unitary",
      [](int n, std::uint64_t seed, std::uint64_t stream) {
        RngStream rng(seed, stream);
        return haar_unitary(n, rng);
      },
      py::arg("n"), py::arg("seed"), py::arg("stream") = 0,
      "Haar-distributed n x n unitary from the (seed, stream) substream");

  m.def(
      "sample_domain",
      [](int n, std::uint64_t seed, std::uint64_t index) {
        RngStream rng(seed, index);
        return sample_domain_uniform(n, rng).Z;
      },
      py::arg("n"), py::arg("seed"), py::arg("index") = 0,
      "One uniform sample from the domain Z*Z < I");

  m.def("spectral_norm", &spectral_norm, py::arg("Z"));
  m.def("in_domain", &in_domain, py::arg("Z"));

  m.def(
      "decompose_json",
      [](int n, int d) {
        std::vector<std::string> out;
        for (const auto& c : decompose_degree(n, d)) out.push_back(component_to_json(c, n));
        return out;
      },
      py::arg("n"), py::arg("d"),
      "Isotypic decomposition of degree-d polynomials, one JSON document per component");

  py::class_<CompiledSymbol>(m, "Symbol")
      .def(py::init([](const std::string& text, int n, double divisor_min) {
             return compile_symbol(text, n, divisor_min);
           }),
           py::arg("text"), py::arg("n"), py::arg("divisor_min") = 1e-6)
      .def_property_readonly("text", &CompiledSymbol::text)
      .def_property_readonly("n", &CompiledSymbol::n)
      .def_property_readonly("kind",
                             [](const CompiledSymbol& s) { return to_string(s.kind()); })
      .def_property_readonly("sup_bound", &CompiledSymbol::sup_bound)
      .def("eval", &CompiledSymbol::eval, py::arg("Z"))
      .def("__repr__", [](const CompiledSymbol& s) {
        return "Symbol('" + s.text() + "', n=" + std::to_string(s.n()) + ")";
      });

  m.def(
      "invariance_check_json",
      [](const CompiledSymbol& sym, const std::string& group, std::uint64_t seed,
         int trials) {
        RngStream rng(seed, 0);
        return invariance_report_to_json(
            invariance_check(sym, group_from_string(group), rng, trials));
      },
      py::arg("symbol"), py::arg("group"), py::arg("seed") = 1, py::arg("trials") = 100,
      "Randomized invariance report as a JSON document");

  py::class_<SampleBatch>(m, "SampleBatch")
      .def(py::init([](int n, double lam, long nsamples, std::uint64_t seed, int shards) {
             return SampleBatch(n, lam, MCConfig{nsamples, seed, shards});
           }),
           py::arg("n"), py::arg("lam"), py::arg("nsamples"), py::arg("seed") = 1,
           py::arg("shards") = 1)
      .def_property_readonly("n", &SampleBatch::n)
      .def_property_readonly("lam", &SampleBatch::lambda)
      .def_property_readonly("size", &SampleBatch::size)
      .def_property_readonly("acceptance_rate", &SampleBatch::acceptance_rate)
      .def("normalizer", [](const SampleBatch& b) {
        MCEstimate e = b.normalizer();
        return py::make_tuple(e.value, e.stderr_);
      })
      .def(
          "inner",
          [](const SampleBatch& b, const CompiledSymbol& f, const CompiledSymbol& g) {
            MCEstimate e = b.inner(b.evaluate(f), b.evaluate(g));
            return py::make_tuple(e.value, e.stderr_);
          },
          py::arg("f"), py::arg("g"),
          "Monte-Carlo estimate of the weighted inner product of two symbols");

  py::class_<ToeplitzBlock>(m, "ToeplitzBlock")
      .def_property_readonly("mu", [](const ToeplitzBlock& b) { return b.mu.m; })
      .def_property_readonly("lam", [](const ToeplitzBlock& b) { return b.lambda; })
      .def_property_readonly("symbol", [](const ToeplitzBlock& b) { return b.symbol; })
      .def_property_readonly("matrix", [](const ToeplitzBlock& b) { return b.matrix; })
      .def_property_readonly("stderrs", [](const ToeplitzBlock& b) { return b.stderrs; })
      .def_property_readonly("noise_bound",
                             [](const ToeplitzBlock& b) { return b.noise_bound; })
      .def("scalar_defect", [](const ToeplitzBlock& b) { return scalar_defect(b); })
      .def("normality_defect", [](const ToeplitzBlock& b) { return normality_defect(b); })
      .def("normality_noise", [](const ToeplitzBlock& b) { return normality_noise(b); })
      .def(
          "commutator_defect",
          [](const ToeplitzBlock& a, const ToeplitzBlock& b) {
            return commutator_defect(a, b);
          },
          py::arg("other"));

  m.def(
      "toeplitz_block",
      [](const CompiledSymbol& sym, std::vector<int> mu, const SampleBatch& batch) {
        int d = 0;
        for (int v : mu) d += v;
        auto comps = decompose_degree(batch.n(), d);
        return toeplitz_block(sym, find_component(comps, std::move(mu)), batch);
      },
      py::arg("symbol"), py::arg("mu"), py::arg("batch"),
      "Compression of T_symbol to the isotypic component labeled by mu");
}
