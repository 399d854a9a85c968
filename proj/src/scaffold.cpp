#include "boscribe/scaffold.hpp"

#include <cctype>

namespace boscribe
{

std::string system_name(std::string_view project)
{
  std::string out;
  bool upper = true;
  for (const char c : project) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out += upper ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c;
      upper = false;
    } else
      upper = true;  // word boundary: my-dapp -> MyDapp
  }
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out.front()))) out = "App" + out;
  return out;
}

std::string starter_model(std::string_view project)
{
  const std::string name = system_name(project);
  return "// Starter model. Replace the registry with the contracts of the system.\n"
         "system " +
         name +
         " {\n"
         "    goal \"One or two sentences on what " +
         name +
         " is for.\";\n"
         "\n"
         "    contract Registry {\n"
         "        role members;\n"
         "        public address owner;\n"
         "        public uint32 entries;\n"
         "\n"
         "        event EntryAdded(address who);\n"
         "\n"
         "        modifier onlyOwner() requires sender == owner;\n"
         "        modifier onlyMember() requires sender in members;\n"
         "\n"
         "        constructor()\n"
         "            sets owner = sender;\n"
         "        function addMember(address who) uses onlyOwner\n"
         "            sets members += who;\n"
         "        function addEntry() uses onlyMember\n"
         "            effects(emits EntryAdded)\n"
         "            sets entries += 1;\n"
         "    }\n"
         "\n"
         "    actor Owner : person;\n"
         "    actor Member : person;\n"
         "\n"
         "    scenario firstEntry {\n"
         "        participant <<person>> alice : Owner;\n"
         "        participant <<person>> bob : Member;\n"
         "        participant <<contract>> reg : Registry;\n"
         "        create alice -> reg() => ok;\n"
         "        call bob -> reg.addEntry() => revert onlyMember;\n"
         "        call alice -> reg.addMember(bob) => ok;\n"
         "        call bob -> reg.addEntry() => ok;\n"
         "    }\n"
         "\n"
         "    story addMembers by Owner onchain \"Admit a new member.\";\n"
         "    story addEntries by Member onchain \"Record an entry.\";\n"
         "}\n";
}

std::string process_checklist()
{
  return "# Process checklist\n"
         "\n"
         "- [ ] 1. Goal: fill in goal.md.\n"
         "- [ ] 2. Actors: fill in actors.md.\n"
         "- [ ] 3. Stories: one file per story under stories/.\n"
         "- [ ] 4. Split: set the Subsystem field of each story to onchain, offchain or both.\n"
         "- [ ] 5. Contracts: grow onchain/model.bos until `boscribe check` is clean and `boscribe simulate` "
         "passes; review `boscribe diagram` output.\n"
         "- [ ] 6. Off-chain app: record its design in offchain/.\n"
         "- [ ] 7. Build: start contracts from `boscribe codegen`, test both halves.\n"
         "- [ ] 8. Ship: end-to-end test, then deploy.\n";
}

std::vector<ScaffoldFile> scaffold(std::string_view project)
{
  const std::string name = system_name(project);
  return {
      {"goal.md", "# Goal of " + name + "\n\nState the goal in one or two sentences.\n"},
      {"actors.md",
       "# Actors\n\n"
       "| Actor | Kind (person, system, device, account) | Notes |\n"
       "|-------|-----------------------------------------|-------|\n"
       "|       |                                         |       |\n"},
      {"stories/story-template.md",
       "# Story: <id>\n\n"
       "- Actor: <actor>\n"
       "- Subsystem: onchain | offchain | both\n\n"
       "As a <actor>, I want <capability> so that <benefit>.\n\n"
       "## Acceptance\n\n- \n"},
      {"onchain/model.bos", starter_model(project)},
      {"offchain/README.md",
       "# Off-chain subsystem\n\n"
       "Placeholder. The application that talks to the contracts is designed "
       "and built outside boscribe.\n"},
      {"process-checklist.md", process_checklist()},
  };
}

}  // namespace boscribe
