from eaqmds.cli import main

main()
