from distort_lab.main import main

main()
