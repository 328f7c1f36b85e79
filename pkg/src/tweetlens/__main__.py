from tweetlens.cli import main

main()
