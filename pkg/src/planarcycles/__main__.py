from planarcycles.cli import main

main()
