#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fixtures.hpp"

using namespace relaus;
using fixtures::a2;
using fixtures::truncated_poly;
using fixtures::two_points;

namespace {

// independent reference: solve M_j F = F N_j entrywise over the whole basis
int naive_hom_dim(const ModPtr& m, const ModPtr& n) {
  Field fl(m->alg->field);
  int rows = m->alg->dim * m->dim * n->dim;
  Matrix sys(m->alg->field, rows, m->dim * n->dim);
  int r = 0;
  for (int j = 0; j < m->alg->dim; ++j)
    for (int i = 0; i < m->dim; ++i)
      for (int l = 0; l < n->dim; ++l) {
        for (int k = 0; k < m->dim; ++k)
          sys.at(r, k * n->dim + l) =
              fl.add(sys.at(r, k * n->dim + l), m->action[j].at(i, k));
        for (int k = 0; k < n->dim; ++k)
          sys.at(r, i * n->dim + k) =
              fl.sub(sys.at(r, i * n->dim + k), n->action[j].at(k, l));
        ++r;
      }
  return m->dim * n->dim - rank(sys);
}

Matrix random_matrix(FieldSpec f, int rows, int cols, std::mt19937& rng) {
  Matrix m(f, rows, cols);
  Field fl(f);
  std::uniform_int_distribution<int> d(-2, 2);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = fl.reduce(Scalar(d(rng)));
  return m;
}

ModPtr simple_at(const AlgPtr& a, int vertex) {
  std::vector<int> dims(a->n_idempotents(), 0);
  dims[vertex] = 1;
  int narrows = a->quiver ? static_cast<int>(a->quiver->arrows.size()) : 0;
  std::vector<Matrix> mats;
  for (int i = 0; i < narrows; ++i) {
    const auto& ar = a->quiver->arrows[i];
    mats.emplace_back(a->field, dims[ar.source], dims[ar.target]);
  }
  return module_from_arrow_matrices(a, dims, mats);
}

}  // namespace

TEST_CASE("regular module and its layers") {
  auto a = truncated_poly(2);
  auto reg = regular_module(a);
  CHECK(reg->dim == 2);
  validate_module(*reg);

  CHECK(radical_sub(reg).module->dim == 1);
  CHECK(top_quotient(reg).module->dim == 1);
  CHECK(socle_sub(reg).module->dim == 1);

  auto l3 = truncated_poly(3);
  auto reg3 = regular_module(l3);
  CHECK(radical_sub(reg3).module->dim == 2);
  CHECK(top_quotient(reg3).module->dim == 1);
  CHECK(socle_sub(reg3).module->dim == 1);

  // semisimple case: radical zero, socle everything
  auto kk = two_points();
  auto regk = regular_module(kk);
  CHECK(radical_sub(regk).module->dim == 0);
  CHECK(socle_sub(regk).module->dim == 2);
}

TEST_CASE("kernel, image, cokernel of multiplication by x") {
  auto a = truncated_poly(2);
  auto reg = regular_module(a);
  int xi = 1;  // basis index of x
  ModuleMap f = make_map(reg, reg, a->right_mult_matrix(xi));
  auto ker = kernel(f);
  auto im = image(f);
  auto cok = cokernel(f);
  CHECK(ker.module->dim == 1);
  CHECK(im.module->dim == 1);
  CHECK(cok.module->dim == 1);
  // inclusion and projection really are module maps (constructors check, but
  // exercise is_intertwiner directly too)
  CHECK(is_intertwiner(*ker.module, *reg, ker.map.mat));
  CHECK(is_intertwiner(*reg, *cok.module, cok.map.mat));
  // corestriction followed by inclusion recovers f
  ModuleMap co = image_corestriction(f, im);
  CHECK(compose(co, im.map).mat == f.mat);
  // kernel then f is zero
  CHECK(compose(ker.map, f).mat.is_zero());
}

TEST_CASE("submodule generation closes under the action") {
  auto l3 = truncated_poly(3);
  auto reg = regular_module(l3);
  Field fl(l3->field);
  Matrix row(l3->field, 1, 3);
  row.at(0, 0) = fl.one();  // e generates everything
  CHECK(submodule_from_rows(reg, row).module->dim == 3);
  Matrix rx(l3->field, 1, 3);
  rx.at(0, 1) = fl.one();  // x generates x, x^2
  CHECK(submodule_from_rows(reg, rx).module->dim == 2);
  Matrix rxx(l3->field, 1, 3);
  rxx.at(0, 2) = fl.one();
  CHECK(submodule_from_rows(reg, rxx).module->dim == 1);
}

TEST_CASE("projectives of the regular module") {
  auto a = a2();
  auto projs = regular_projectives(a);
  REQUIRE(projs.size() == 2);
  CHECK(projs[0]->dim == 2);  // e_1, a
  CHECK(projs[1]->dim == 1);
  for (auto& p : projs) validate_module(*p);

  auto l2 = truncated_poly(2);
  auto p2 = regular_projectives(l2);
  REQUIRE(p2.size() == 1);
  CHECK(p2[0]->dim == 2);
}

TEST_CASE("hom dimensions over k[x]/(x^2)") {
  auto a = truncated_poly(2);
  auto reg = regular_module(a);
  auto s = top_quotient(reg).module;
  CHECK(s->dim == 1);
  CHECK(hom_dim(s, s) == 1);
  CHECK(hom_dim(s, reg) == 1);
  CHECK(hom_dim(reg, s) == 1);
  CHECK(hom_dim(reg, reg) == 2);
  // basis elements are intertwiners
  for (const auto& h : hom_basis(reg, reg)) CHECK(is_intertwiner(*reg, *reg, h));
}

TEST_CASE("hom dimensions over the arrow algebra") {
  auto a = a2();
  auto projs = regular_projectives(a);
  auto p1 = projs[0];
  auto p2 = projs[1];
  auto s1 = simple_at(a, 0);
  CHECK(hom_dim(p1, p1) == 1);
  CHECK(hom_dim(p1, p2) == 0);
  CHECK(hom_dim(p2, p1) == 1);
  CHECK(hom_dim(s1, p1) == 0);
  CHECK(hom_dim(p1, s1) == 1);
  CHECK(hom_dim(s1, s1) == 1);
  CHECK(hom_dim(s1, p2) == 0);
  CHECK(socle_sub(p1).module->dim == 1);
}

TEST_CASE("blocked and naive hom solvers agree on random modules") {
  std::mt19937 rng(20260822);
  std::uniform_int_distribution<int> dd(0, 3);

  auto check_pair = [&](const AlgPtr& a, auto make_one) {
    for (int trial = 0; trial < 12; ++trial) {
      ModPtr m = make_one(a);
      ModPtr n = make_one(a);
      int got = hom_dim(m, n);
      CHECK(got == naive_hom_dim(m, n));
      auto basis = hom_basis(m, n);
      CHECK(static_cast<int>(basis.size()) == got);
      for (const auto& h : basis) CHECK(is_intertwiner(*m, *n, h));
    }
  };

  auto random_a2_module = [&](const AlgPtr& a) {
    int d1 = dd(rng), d2 = dd(rng);
    std::vector<Matrix> mats = {random_matrix(a->field, d1, d2, rng)};
    return module_from_arrow_matrices(a, {d1, d2}, mats);
  };
  auto random_two_points_module = [&](const AlgPtr& a) {
    return module_from_arrow_matrices(a, {dd(rng), dd(rng)}, {});
  };
  auto random_l2_module = [&](const AlgPtr& a) {
    // square-zero action: random top-right block
    int d = dd(rng), h = d / 2;
    Matrix x(a->field, d, d);
    Field fl(a->field);
    std::uniform_int_distribution<int> dv(-2, 2);
    for (int i = 0; i < h; ++i)
      for (int j = h; j < d; ++j) x.at(i, j) = fl.reduce(Scalar(dv(rng)));
    return module_from_arrow_matrices(a, {d}, {x});
  };

  check_pair(a2(), random_a2_module);
  check_pair(a2(prime_field(3)), random_a2_module);
  check_pair(two_points(), random_two_points_module);
  check_pair(truncated_poly(2), random_l2_module);
}

TEST_CASE("direct sums are biproducts") {
  auto a = truncated_poly(2);
  auto reg = regular_module(a);
  auto s = top_quotient(reg).module;
  SumWitness w = direct_sum(a, {s, reg, s});
  CHECK(w.sum->dim == 4);
  validate_module(*w.sum);
  for (size_t i = 0; i < 3; ++i) {
    CHECK(compose(w.inj[i], w.proj[i]).mat ==
          Matrix::identity(a->field, w.inj[i].src->dim));
    for (size_t j = 0; j < 3; ++j)
      if (i != j) CHECK(compose(w.inj[i], w.proj[j]).mat.is_zero());
  }
  // sum of proj then inj is the identity of the sum
  Matrix total(a->field, w.sum->dim, w.sum->dim);
  for (size_t i = 0; i < 3; ++i) total = add(total, compose(w.proj[i], w.inj[i]).mat);
  CHECK(total == Matrix::identity(a->field, w.sum->dim));
}

TEST_CASE("duals") {
  auto a = a2();
  auto op = opposite(a);
  auto projs = regular_projectives(a);
  auto d1 = dual_module(projs[0], op);
  CHECK(d1->dim == 2);
  validate_module(*d1);
  // dual of the simple is simple over the opposite
  auto s1 = simple_at(a, 0);
  auto ds = dual_module(s1, op);
  CHECK(ds->dim == 1);
  validate_module(*ds);
  // double dual has the original dimensions and actions
  auto dd1 = dual_module(d1, opposite(op));
  for (int j = 0; j < a->dim; ++j) CHECK(dd1->action[j] == projs[0]->action[j]);

  // hom into the dual of the regular module detects every module's dimension
  auto inj_cog = dual_module(regular_module(op), a);
  validate_module(*inj_cog);
  CHECK(hom_dim(projs[0], inj_cog) == projs[0]->dim);
  CHECK(hom_dim(s1, inj_cog) == 1);
}

TEST_CASE("arrow matrix input is validated") {
  auto a = truncated_poly(2);
  Field fl(a->field);
  Matrix bad(a->field, 1, 1);
  bad.at(0, 0) = fl.one();  // x^2 would act by 1
  CHECK_THROWS_WITH_AS(module_from_arrow_matrices(a, {1}, {bad}),
                       doctest::Contains("x*x"), Error);
  Matrix good(a->field, 1, 1);
  auto s = module_from_arrow_matrices(a, {1}, {good});
  CHECK(s->dim == 1);
  // shape errors
  CHECK_THROWS_AS(module_from_arrow_matrices(a, {2}, {Matrix(a->field, 1, 2)}),
                  Error);
  auto b = a2();
  CHECK_THROWS_AS(module_from_arrow_matrices(b, {1}, {Matrix(b->field, 1, 1)}),
                  Error);  // one dim per vertex required
}

TEST_CASE("peirce decomposition") {
  std::mt19937 rng(7);
  auto a = a2();
  for (int trial = 0; trial < 8; ++trial) {
    std::uniform_int_distribution<int> dd(0, 3);
    int d1 = dd(rng), d2 = dd(rng);
    auto m = module_from_arrow_matrices(a, {d1, d2},
                                        {random_matrix(a->field, d1, d2, rng)});
    PeirceDecomp p = peirce(*m);
    CHECK(mul(p.u, p.u_inv) == Matrix::identity(a->field, m->dim));
    REQUIRE(p.offset.size() == 3);
    CHECK(p.offset[1] - p.offset[0] == d1);
    CHECK(p.offset[2] - p.offset[1] == d2);
  }
}

TEST_CASE("quotients") {
  auto l3 = truncated_poly(3);
  auto reg = regular_module(l3);
  Field fl(l3->field);
  Matrix rx(l3->field, 1, 3);
  rx.at(0, 2) = fl.one();  // socle
  SubQuot q = quotient_by_rows(reg, rx);
  CHECK(q.module->dim == 2);
  validate_module(*q.module);
  // the quotient is the regular module of k[x]/(x^2) in disguise: x^2 acts by 0
  CHECK(q.module->act_elem({Scalar(0), Scalar(0), Scalar(1)}).is_zero());
  // projection is surjective
  CHECK(rank(q.map.mat) == 2);
}
