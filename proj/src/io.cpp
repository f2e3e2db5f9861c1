// SPDX-License-Identifier: Apache-2.0
#include "bilintang/io.hpp"

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace bilintang {

namespace {

using nlohmann::json;

std::string formatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool hasImaginaryPart(const Eigen::MatrixXcd &matrix) {
  for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
    for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
      if (matrix(i, j).imag() != 0.0) {
        return true;
      }
    }
  }
  return false;
}

} // namespace

void writeMatrixMarket(const std::string &path,
                       const Eigen::MatrixXcd &matrix) {
  const bool complex_field = hasImaginaryPart(matrix);
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  Eigen::Index nnz = 0;
  for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
    for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
      if (matrix(i, j) != Complex(0.0, 0.0)) {
        ++nnz;
      }
    }
  }
  out << "%%MatrixMarket matrix coordinate "
      << (complex_field ? "complex" : "real") << " general\n";
  out << matrix.rows() << ' ' << matrix.cols() << ' ' << nnz << '\n';
  for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
    for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
      const Complex v = matrix(i, j);
      if (v == Complex(0.0, 0.0)) {
        continue;
      }
      out << (i + 1) << ' ' << (j + 1) << ' ' << formatDouble(v.real());
      if (complex_field) {
        out << ' ' << formatDouble(v.imag());
      }
      out << '\n';
    }
  }
  if (!out) {
    throw std::runtime_error("write failure on '" + path + "'");
  }
}

Eigen::MatrixXcd readMatrixMarket(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "' for reading");
  }
  std::string header;
  if (!std::getline(in, header) || header.rfind("%%MatrixMarket", 0) != 0) {
    throw std::runtime_error("'" + path + "' is not a Matrix Market file");
  }
  std::istringstream hs(header);
  std::string tag, object, format, field, symmetry;
  hs >> tag >> object >> format >> field >> symmetry;
  if (object != "matrix") {
    throw std::runtime_error("'" + path + "': unsupported object " + object);
  }
  const bool coordinate = format == "coordinate";
  if (!coordinate && format != "array") {
    throw std::runtime_error("'" + path + "': unsupported format " + format);
  }
  const bool complex_field = field == "complex";
  if (!complex_field && field != "real" && field != "integer") {
    throw std::runtime_error("'" + path + "': unsupported field " + field);
  }

  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '%') {
      break;
    }
  }
  std::istringstream sizes(line);
  Eigen::Index rows = 0, cols = 0;
  long long nnz = 0;
  sizes >> rows >> cols;
  if (coordinate) {
    sizes >> nnz;
  }
  if (rows <= 0 || cols <= 0) {
    throw std::runtime_error("'" + path + "': bad size line");
  }
  Eigen::MatrixXcd matrix = Eigen::MatrixXcd::Zero(rows, cols);

  auto place = [&](Eigen::Index i, Eigen::Index j, Complex v) {
    matrix(i, j) = v;
    if (i != j) {
      if (symmetry == "symmetric") {
        matrix(j, i) = v;
      } else if (symmetry == "skew-symmetric") {
        matrix(j, i) = -v;
      } else if (symmetry == "hermitian") {
        matrix(j, i) = std::conj(v);
      }
    }
  };

  if (coordinate) {
    for (long long e = 0; e < nnz; ++e) {
      Eigen::Index i = 0, j = 0;
      double re = 0.0, im = 0.0;
      if (!(in >> i >> j >> re)) {
        throw std::runtime_error("'" + path + "': truncated entry list");
      }
      if (complex_field && !(in >> im)) {
        throw std::runtime_error("'" + path + "': truncated complex entry");
      }
      place(i - 1, j - 1, Complex(re, im));
    }
  } else {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const Eigen::Index start = symmetry == "general" ? 0 : j;
      for (Eigen::Index i = start; i < rows; ++i) {
        double re = 0.0, im = 0.0;
        if (!(in >> re)) {
          throw std::runtime_error("'" + path + "': truncated array data");
        }
        if (complex_field && !(in >> im)) {
          throw std::runtime_error("'" + path + "': truncated complex entry");
        }
        place(i, j, Complex(re, im));
      }
    }
  }
  return matrix;
}

namespace {

void writeNamed(const std::string &dir, json &files, const std::string &name,
                const Eigen::MatrixXcd &matrix) {
  const std::string file = name + ".mtx";
  writeMatrixMarket(dir + "/" + file, matrix);
  files[name] = file;
}

Eigen::MatrixXcd readNamed(const std::string &dir, const json &files,
                           const std::string &name) {
  if (!files.contains(name)) {
    throw std::runtime_error("bundle descriptor missing matrix '" + name +
                             "'");
  }
  return readMatrixMarket(dir + "/" + files[name].get<std::string>());
}

} // namespace

void saveSystem(const std::string &dir, const StructuredBilinearSystem &sys) {
  std::filesystem::create_directories(dir);
  json desc;
  desc["template"] = templateTagName(sys.tag());
  desc["n"] = sys.n();
  desc["m"] = sys.m();
  desc["p"] = sys.p();
  json files = json::object();

  switch (sys.tag()) {
  case TemplateTag::FirstOrder: {
    FirstOrderParts parts = extractFirstOrder(sys);
    writeNamed(dir, files, "E", parts.E);
    writeNamed(dir, files, "A", parts.A);
    writeNamed(dir, files, "B", parts.B);
    writeNamed(dir, files, "C", parts.C);
    for (size_t j = 0; j < parts.N.size(); ++j) {
      writeNamed(dir, files, "N" + std::to_string(j + 1), parts.N[j]);
    }
    break;
  }
  case TemplateTag::SecondOrder: {
    SecondOrderParts parts = extractSecondOrder(sys);
    writeNamed(dir, files, "M", parts.M);
    writeNamed(dir, files, "D", parts.D);
    writeNamed(dir, files, "K", parts.K);
    writeNamed(dir, files, "Bu", parts.Bu);
    writeNamed(dir, files, "Cp", parts.Cp);
    writeNamed(dir, files, "Cv", parts.Cv);
    for (size_t j = 0; j < parts.Np.size(); ++j) {
      writeNamed(dir, files, "Np" + std::to_string(j + 1), parts.Np[j]);
      writeNamed(dir, files, "Nv" + std::to_string(j + 1), parts.Nv[j]);
    }
    break;
  }
  case TemplateTag::TimeDelay: {
    TimeDelayParts parts = extractTimeDelay(sys);
    desc["tau"] = parts.tau;
    writeNamed(dir, files, "E", parts.E);
    writeNamed(dir, files, "A", parts.A);
    writeNamed(dir, files, "Ad", parts.Ad);
    writeNamed(dir, files, "B", parts.B);
    writeNamed(dir, files, "C", parts.C);
    for (size_t j = 0; j < parts.N.size(); ++j) {
      writeNamed(dir, files, "N" + std::to_string(j + 1), parts.N[j]);
    }
    break;
  }
  case TemplateTag::Custom:
    throw std::invalid_argument("custom-template systems are not serializable");
  }
  desc["matrices"] = files;

  std::ofstream out(dir + "/descriptor.json");
  if (!out) {
    throw std::runtime_error("cannot write descriptor in '" + dir + "'");
  }
  out << desc.dump(2) << '\n';
}

StructuredBilinearSystem loadSystem(const std::string &dir) {
  std::ifstream in(dir + "/descriptor.json");
  if (!in) {
    throw std::runtime_error("cannot open '" + dir + "/descriptor.json'");
  }
  json desc = json::parse(in);
  const TemplateTag tag = templateTagFromName(desc["template"]);
  const Eigen::Index m = desc["m"].get<Eigen::Index>();
  const json &files = desc["matrices"];

  switch (tag) {
  case TemplateTag::FirstOrder: {
    const Eigen::MatrixXcd E = readNamed(dir, files, "E");
    const Eigen::MatrixXcd A = readNamed(dir, files, "A");
    const Eigen::MatrixXcd B = readNamed(dir, files, "B");
    const Eigen::MatrixXcd Cm = readNamed(dir, files, "C");
    MatrixFunction K(E.rows(), E.cols());
    K.addTerm(ScalarBasis::monomial(1), E);
    K.addTerm(ScalarBasis::monomial(0), -A);
    std::vector<MatrixFunction> N;
    for (Eigen::Index j = 0; j < m; ++j) {
      N.push_back(MatrixFunction::constant(
          readNamed(dir, files, "N" + std::to_string(j + 1))));
    }
    return StructuredBilinearSystem(MatrixFunction::constant(Cm), std::move(K),
                                    MatrixFunction::constant(B), std::move(N),
                                    TemplateTag::FirstOrder);
  }
  case TemplateTag::SecondOrder: {
    const Eigen::MatrixXcd M = readNamed(dir, files, "M");
    const Eigen::MatrixXcd D = readNamed(dir, files, "D");
    const Eigen::MatrixXcd K0 = readNamed(dir, files, "K");
    const Eigen::MatrixXcd Bu = readNamed(dir, files, "Bu");
    const Eigen::MatrixXcd Cp = readNamed(dir, files, "Cp");
    const Eigen::MatrixXcd Cv = readNamed(dir, files, "Cv");
    MatrixFunction K(M.rows(), M.cols());
    K.addTerm(ScalarBasis::monomial(2), M);
    K.addTerm(ScalarBasis::monomial(1), D);
    K.addTerm(ScalarBasis::monomial(0), K0);
    MatrixFunction C(Cp.rows(), Cp.cols());
    C.addTerm(ScalarBasis::monomial(0), Cp);
    C.addTerm(ScalarBasis::monomial(1), Cv);
    std::vector<MatrixFunction> N;
    for (Eigen::Index j = 0; j < m; ++j) {
      MatrixFunction Nj(M.rows(), M.cols());
      Nj.addTerm(ScalarBasis::monomial(0),
                 readNamed(dir, files, "Np" + std::to_string(j + 1)));
      Nj.addTerm(ScalarBasis::monomial(1),
                 readNamed(dir, files, "Nv" + std::to_string(j + 1)));
      N.push_back(std::move(Nj));
    }
    return StructuredBilinearSystem(std::move(C), std::move(K),
                                    MatrixFunction::constant(Bu), std::move(N),
                                    TemplateTag::SecondOrder);
  }
  case TemplateTag::TimeDelay: {
    const double tau = desc["tau"].get<double>();
    const Eigen::MatrixXcd E = readNamed(dir, files, "E");
    const Eigen::MatrixXcd A = readNamed(dir, files, "A");
    const Eigen::MatrixXcd Ad = readNamed(dir, files, "Ad");
    const Eigen::MatrixXcd B = readNamed(dir, files, "B");
    const Eigen::MatrixXcd Cm = readNamed(dir, files, "C");
    MatrixFunction K(A.rows(), A.cols());
    K.addTerm(ScalarBasis::monomial(1), E);
    K.addTerm(ScalarBasis::monomial(0), -A);
    K.addTerm(ScalarBasis::delayExponential(tau), -Ad);
    std::vector<MatrixFunction> N;
    for (Eigen::Index j = 0; j < m; ++j) {
      N.push_back(MatrixFunction::constant(
          readNamed(dir, files, "N" + std::to_string(j + 1))));
    }
    return StructuredBilinearSystem(MatrixFunction::constant(Cm), std::move(K),
                                    MatrixFunction::constant(B), std::move(N),
                                    TemplateTag::TimeDelay, tau);
  }
  default:
    throw std::runtime_error("unsupported template tag in bundle");
  }
}

void saveBases(const std::string &dir, const ReductionBases &bases) {
  std::filesystem::create_directories(dir);
  writeMatrixMarket(dir + "/V.mtx", bases.V);
  writeMatrixMarket(dir + "/W.mtx", bases.W);

  json prov;
  auto dump = [](const std::vector<ConditionDescriptor> &records) {
    json arr = json::array();
    for (const ConditionDescriptor &desc : records) {
      arr.push_back({{"set", desc.set},
                     {"level", desc.level},
                     {"orders", desc.orders},
                     {"block", desc.block},
                     {"side", std::string(1, desc.side)},
                     {"raw_index", desc.raw_index}});
    }
    return arr;
  };
  prov["V"] = dump(bases.provenance_V);
  prov["W"] = dump(bases.provenance_W);
  prov["raw_width_V"] = bases.raw_width_V;
  prov["raw_width_W"] = bases.raw_width_W;
  prov["real_valued"] = bases.real_valued;

  std::ofstream out(dir + "/provenance.json");
  if (!out) {
    throw std::runtime_error("cannot write provenance in '" + dir + "'");
  }
  out << prov.dump(2) << '\n';
}

} // namespace bilintang
