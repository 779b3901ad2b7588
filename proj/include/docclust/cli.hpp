#ifndef DOCCLUST_CLI_HPP
#define DOCCLUST_CLI_HPP

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace docclust {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Entry point of the docclust tool: cluster, eval, sweep, recommend.
int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// One cluster index per line; -1 marks a document that was not clustered.
std::vector<int> load_assignment(const std::filesystem::path &path);
void write_assignment(std::ostream &out, const std::vector<int> &assignment);

}  // namespace docclust

#endif  // DOCCLUST_CLI_HPP
