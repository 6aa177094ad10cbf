#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ban
{

/* runs one command; `args` excludes the program name. Returns 0 for success or a
 * `yes` decision, 1 for a `no` decision, 2 for usage and input errors. */
int cli_main( std::vector<std::string> const& args, std::ostream& out, std::ostream& err );

} // namespace ban
