#include "zdlab/models.hpp"

#include "zdlab/errors.hpp"

namespace zdlab::models {

using surface::ModelSpec;
using surface::SurfaceModel;

surface::ModelPtr blp2() {
  static const auto model = [] {
    ModelSpec s;
    s.name = "blp2";
    s.class_names = {"H", "E"};
    s.intersection = QMat{{1, 0}, {0, -1}};
    s.effective_generators = {QVec::from_ints({0, 1}), QVec::from_ints({1, -1})};
    s.generator_names = {"E", "F"};
    s.canonical = QVec::from_ints({-3, 1});
    s.genus = {{"H", 0}, {"E", 0}, {"F", 0}};
    return SurfaceModel::create(std::move(s));
  }();
  return model;
}

surface::ModelPtr blp2x2() {
  static const auto model = [] {
    ModelSpec s;
    s.name = "blp2x2";
    s.class_names = {"H", "E1", "E2"};
    s.intersection = QMat{{1, 0, 0}, {0, -1, 0}, {0, 0, -1}};
    s.effective_generators = {QVec::from_ints({0, 1, 0}), QVec::from_ints({0, 0, 1}),
                              QVec::from_ints({1, -1, -1})};
    s.generator_names = {"E1", "E2", "L"};
    s.canonical = QVec::from_ints({-3, 1, 1});
    s.genus = {{"H", 0}, {"E1", 0}, {"E2", 0}, {"L", 0}};
    return SurfaceModel::create(std::move(s));
  }();
  return model;
}

surface::ModelPtr hirzebruch(int n) {
  if (n < 0 || n > 2) throw UsageError("bundled Hirzebruch surfaces are F_0, F_1, F_2");
  static const auto models = [] {
    std::vector<surface::ModelPtr> out;
    for (long k = 0; k <= 2; ++k) {
      ModelSpec s;
      s.name = "hirzebruch-" + std::to_string(k);
      s.class_names = {"C", "F"};
      s.intersection = QMat{{Rat(-k), 1}, {1, 0}};
      s.effective_generators = {QVec::from_ints({1, 0}), QVec::from_ints({0, 1})};
      s.generator_names = {"C", "F"};
      s.canonical = QVec::from_ints({-2, -(k + 2)});
      s.genus = {{"C", 0}, {"F", 0}};
      out.push_back(SurfaceModel::create(std::move(s)));
    }
    return out;
  }();
  return models[static_cast<std::size_t>(n)];
}

std::vector<std::string> bundled_names() {
  return {"blp2", "blp2x2", "hirzebruch-0", "hirzebruch-1", "hirzebruch-2"};
}

surface::ModelPtr bundled(std::string_view name) {
  if (name == "blp2") return blp2();
  if (name == "blp2x2") return blp2x2();
  if (name == "hirzebruch-0") return hirzebruch(0);
  if (name == "hirzebruch-1") return hirzebruch(1);
  if (name == "hirzebruch-2") return hirzebruch(2);
  throw UsageError("unknown bundled model '" + std::string(name) + "'");
}

}  // namespace zdlab::models
