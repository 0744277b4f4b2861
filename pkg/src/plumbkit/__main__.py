from plumbkit.cli import main

main()
