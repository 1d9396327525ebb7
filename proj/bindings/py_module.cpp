#include <pybind11/pybind11.h>

#include <algorithm>

#include "relaus/errors.hpp"
#include "relaus/homology.hpp"
#include "relaus/io.hpp"

namespace py = pybind11;
using namespace relaus;

namespace {

std::vector<int> vdims(const ModPtr& m) {
  std::vector<int> out;
  for (int k = 0; k < m->alg->n_idempotents(); ++k)
    out.push_back(rank(m->act_idempotent(k)));
  return out;
}

Catalog auto_catalog(const AlgPtr& a, int max_dim, long max_steps) {
  EnumBudget b{max_dim, max_steps};
  Catalog cat = a->field.kind == FieldKind::rational
                    ? knit_indecomposables(a, b)
                    : bounded_indecomposables(a, max_dim, b);
  std::stable_sort(cat.members.begin(), cat.members.end(),
                   [](const ModPtr& x, const ModPtr& y) {
                     if (x->dim != y->dim) return x->dim < y->dim;
                     return vdims(x) < vdims(y);
                   });
  return cat;
}

SetupPtr full_setup(const AlgPtr& a, int max_dim, long max_steps,
                    int ext_bound) {
  Catalog cat = auto_catalog(a, max_dim, max_steps);
  SetupOptions so;
  so.ext_bound = ext_bound;
  return build_setup(a, cat.members, so);
}

}  // namespace

PYBIND11_MODULE(_relaus, m) {
  m.doc() = "quiver algebra toolkit: relative Auslander algebras, "
            "recollement functors, tilting certificates";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      if (e.kind == Error::Kind::input)
        PyErr_SetString(PyExc_ValueError, e.what());
      else
        PyErr_SetString(PyExc_RuntimeError, e.what());
    }
  });

  m.def("algebra_digest",
        [](const std::string& spec) { return load_algebra_text(spec)->digest; },
        py::arg("algebra"));

  m.def("indecomposables",
        [](const std::string& spec, int max_dim, long max_steps) {
          AlgPtr a = load_algebra_text(spec);
          return catalog_to_json(a, auto_catalog(a, max_dim, max_steps)).dump();
        },
        py::arg("algebra"), py::arg("max_dim") = 8,
        py::arg("max_steps") = 10000);

  m.def("auslander",
        [](const std::string& spec, int max_dim, long max_steps,
           int ext_bound) {
          AlgPtr a = load_algebra_text(spec);
          return setup_to_json(*full_setup(a, max_dim, max_steps, ext_bound))
              .dump();
        },
        py::arg("algebra"), py::arg("max_dim") = 8,
        py::arg("max_steps") = 10000, py::arg("ext_bound") = 6);

  m.def("zeta",
        [](const std::string& spec, const std::string& module_spec, int max_dim,
           long max_steps, int ext_bound) {
          AlgPtr a = load_algebra_text(spec);
          SetupPtr s = full_setup(a, max_dim, max_steps, ext_bound);
          ModPtr mod = module_from_json(
              parse_json_text(module_spec, "module spec"), a);
          return zeta_to_json(zeta(s, mod)).dump();
        },
        py::arg("algebra"), py::arg("module"), py::arg("max_dim") = 8,
        py::arg("max_steps") = 10000, py::arg("ext_bound") = 6);

  m.def("check_tilting",
        [](const std::string& spec, const std::string& candidate, int max_dim,
           long max_steps, int ext_bound) {
          AlgPtr a = load_algebra_text(spec);
          SetupPtr s = full_setup(a, max_dim, max_steps, ext_bound);
          ModPtr t;
          if (candidate == "regular")
            t = regular_module(s->end.gamma);
          else if (candidate == "zeta-sum")
            t = zeta(s, s->end.x).zeta_m;
          else
            throw input_error("unknown candidate \"" + candidate + "\"");
          return tilting_to_json(check_cotilting(s, t)).dump();
        },
        py::arg("algebra"), py::arg("candidate") = "zeta-sum",
        py::arg("max_dim") = 8, py::arg("max_steps") = 10000,
        py::arg("ext_bound") = 6);

  m.def("ttf_audit",
        [](const std::string& spec, int samples, int max_dim, long max_steps,
           int ext_bound) {
          AlgPtr a = load_algebra_text(spec);
          SetupPtr s = full_setup(a, max_dim, max_steps, ext_bound);
          ModPtr t = zeta(s, s->end.x).zeta_m;
          AuditOptions opt;
          opt.min_samples = samples;
          return ttf_to_json(theorem41_audit(s, t, {}, opt)).dump();
        },
        py::arg("algebra"), py::arg("samples") = 20, py::arg("max_dim") = 8,
        py::arg("max_steps") = 10000, py::arg("ext_bound") = 6);

  m.def("gprj_pipeline",
        [](const std::string& spec, int max_dim, long max_steps,
           int ext_bound) {
          AlgPtr a = load_algebra_text(spec);
          SetupOptions so;
          so.ext_bound = ext_bound;
          return gprj_to_json(
                     gprj_pipeline(a, EnumBudget{max_dim, max_steps}, so))
              .dump();
        },
        py::arg("algebra"), py::arg("max_dim") = 8,
        py::arg("max_steps") = 10000, py::arg("ext_bound") = 6);

  m.def("morita_invariants",
        [](const std::string& spec) {
          return json_of(morita_invariants(load_algebra_text(spec))).dump();
        },
        py::arg("algebra"));
}
