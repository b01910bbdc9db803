#include "surfsig/pipeline.hpp"

#include "surfsig/text.hpp"

namespace surfsig {

PipelineRun run_pipeline(std::string_view source, std::optional<Eigen::Index> genus, Convention conv) {
  PipelineRun run;
  auto lookup = [&](const std::string& name, int line) -> const FibrationRecord& {
    const auto it = run.values.find(name);
    if (it == run.values.end())
      throw UnknownName("line " + std::to_string(line) + ": '" + name + "' is not defined");
    return it->second;
  };
  for (const auto& line : text::lines(source)) {
    const auto tok = text::split_ws(line.text);
    if (tok[0] == "let") {
      if (tok.size() < 5 || tok[2] != "=") throw ParseError(line.number, 1, {"let <name> = <operation>"});
      const std::string& name = tok[1];
      if (tok[3] == "fib") {
        if (tok.size() != 5) throw ParseError(line.number, 1, {"fib <file>"});
        run.values[name] = summarize(load_fibration(tok[4], genus, conv), conv);
      } else if (tok[3] == "subtract") {
        if (tok.size() < 8 || tok[6] != "groups") throw ParseError(line.number, 1, {"subtract <a> <b> groups <spec>"});
        SubtractOptions options;
        for (std::size_t i = 8; i < tok.size(); ++i) {
          if (tok[i] == "lifts=coinciding")
            options.coinciding_lifts = true;
          else if (tok[i] == "assert-isomorphic")
            options.assert_isomorphic = true;
          else
            throw ParseError(line.number, 1, {"lifts=coinciding", "assert-isomorphic"}, tok[i]);
        }
        FibrationRecord r =
            subtract(lookup(tok[4], line.number), lookup(tok[5], line.number), parse_groups(tok[7]), options);
        r.id = name;
        run.values[name] = std::move(r);
      } else {
        throw ParseError(line.number, 1, {"fib", "subtract"}, tok[3]);
      }
    } else if (tok[0] == "expect") {
      if (tok.size() != 8 || tok[2] != "genus" || tok[4] != "signature" || tok[6] != "fibers")
        throw ParseError(line.number, 1, {"expect <name> genus <g> signature <s> fibers <n>"});
      const auto& r = lookup(tok[1], line.number);
      const long g = text::to_int(tok[3], line.number), s = text::to_int(tok[5], line.number),
                 n = text::to_int(tok[7], line.number);
      const bool ok = r.base_genus() == g && r.signature == s && static_cast<long>(r.fibers.size()) == n;
      run.expectations.add("expect " + tok[1], ok,
                           "genus " + std::to_string(r.base_genus()) + " signature " + std::to_string(r.signature) +
                               " fibers " + std::to_string(r.fibers.size()));
    } else if (tok[0] == "result") {
      if (tok.size() != 2) throw ParseError(line.number, 1, {"result <name>"});
      lookup(tok[1], line.number);
      run.result = tok[1];
    } else {
      throw ParseError(line.number, 1, {"let", "expect", "result"}, tok[0]);
    }
  }
  if (run.result.empty()) throw FormatError("pipeline has no result line");
  return run;
}

}  // namespace surfsig
